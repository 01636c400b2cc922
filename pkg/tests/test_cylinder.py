"""Tests for cylinder intervals and the ball containment predicate."""

from fractions import Fraction

import pytest

from lueroth.core.codec import decode
from lueroth.core.cylinder import (
    Parity,
    ball_containment_check,
    cylinder_interval,
    cylinder_measure,
    log_cylinder_measure,
)
from lueroth.core.exceptions import DomainError, PreconditionError
from lueroth.core.partition import PartitionSpec, make_partition


@pytest.fixture
def exact():
    return make_partition(PartitionSpec.classical(exact=True))


@pytest.fixture
def classical():
    return make_partition(PartitionSpec.classical())


class TestCylinderInterval:
    """Test endpoints and orientation."""

    @pytest.mark.parametrize(
        "digits,lo,hi,measure",
        [
            ([2], Fraction(1, 3), Fraction(1, 2), Fraction(1, 6)),
            ([1, 1], Fraction(1, 2), Fraction(3, 4), Fraction(1, 4)),
            ([1], Fraction(1, 2), Fraction(1), Fraction(1, 2)),
        ],
    )
    def test_classical_examples(self, exact, digits, lo, hi, measure):
        """Test classical cylinder endpoints and measures."""
        cylinder = cylinder_interval(exact, digits)
        assert (cylinder.lo, cylinder.hi, cylinder.measure) == (lo, hi, measure)

    def test_rejects_empty_prefix(self, exact):
        """Test that cylinders need digits."""
        with pytest.raises(DomainError):
            cylinder_interval(exact, [])

    @pytest.mark.parametrize("digits", [[3], [2, 5], [1, 4, 2], [7, 7, 7, 7]])
    def test_decoded_prefix_is_parity_endpoint(self, exact, digits):
        """Test that the decoded prefix is the parity endpoint."""
        cylinder = cylinder_interval(exact, digits)
        expected = Parity.ODD if len(digits) % 2 else Parity.EVEN
        assert cylinder.parity == expected
        assert cylinder.anchor == decode(exact, digits)
        assert cylinder.hi - cylinder.lo == cylinder.measure

    def test_deep_cylinders_stay_ordered(self, classical):
        """Test a 30-level cylinder."""
        digits = [40] * 30
        cylinder = cylinder_interval(classical, digits)
        assert cylinder.lo < cylinder.hi
        width = cylinder.hi - cylinder.lo
        assert abs(width / cylinder.measure - 1) < 1e-20

    def test_nesting(self, exact):
        """Test that children lie in their parent."""
        for prefix in ([2], [1, 3], [4, 2, 6]):
            parent = cylinder_interval(exact, prefix)
            for m in range(1, 15):
                child = cylinder_interval(exact, prefix + [m])
                assert parent.lo <= child.lo < child.hi <= parent.hi
                assert parent.contains(decode(exact, prefix + [m]))

    def test_children_tile_parent(self, exact):
        """Test that children tile their parent."""
        for prefix in ([3], [2, 2]):
            parent = cylinder_interval(exact, prefix)
            children = [cylinder_interval(exact, prefix + [m]) for m in range(1, 30)]
            ordered = sorted(children, key=lambda c: c.lo)
            for left, right in zip(ordered, ordered[1:]):
                assert left.hi == right.lo
            total = sum(c.measure for c in children)
            assert total == parent.measure * (1 - exact.tail(30))
            # children fill in from the endpoint opposite the anchor
            far = parent.lo if parent.anchor == parent.hi else parent.hi
            assert far in (children[0].lo, children[0].hi)
            assert all(parent.anchor not in (c.lo, c.hi) for c in children)


class TestCylinderMeasure:
    """Test cylinder and tilde-cylinder measures."""

    def test_plain_product(self, exact):
        """Test the product of atoms."""
        assert cylinder_measure(exact, [2, 3]) == Fraction(1, 72)

    def test_tilde_cylinder(self, exact):
        """Test tilde-cylinder measures."""
        assert cylinder_measure(exact, [2], tilde_next=3) == Fraction(1, 18)
        assert cylinder_measure(exact, [2], tilde_next=1) == Fraction(1, 6)

    def test_classical_is_correctly_rounded(self, classical):
        """Test that classical measures round once from the exact product."""
        assert cylinder_measure(classical, [2, 3]) == classical.coerce(Fraction(1, 72))
        expected = Fraction(1, 6 * 12 * 56 * 3)
        assert cylinder_measure(classical, [2, 3, 7], tilde_next=3) == classical.coerce(expected)

    def test_rejects_bad_tilde_index(self, classical):
        """Test that tilde_next must be a positive index."""
        with pytest.raises(DomainError, match="tilde_next"):
            cylinder_measure(classical, [2], tilde_next=0)

    def test_tilde_matches_sum_of_children(self, exact):
        """Test a tilde measure against its children."""
        prefix, s, cutoff = [3, 4], 5, 200
        children = sum(cylinder_measure(exact, prefix + [m]) for m in range(s, cutoff))
        tail = cylinder_measure(exact, prefix) * exact.tail(cutoff)
        assert children + tail == cylinder_measure(exact, prefix, tilde_next=s)

    def test_rejects_empty(self, exact):
        """Test that measures need digits."""
        with pytest.raises(DomainError):
            cylinder_measure(exact, [])

    def test_log_measure(self, classical):
        """Test the log measure."""
        assert log_cylinder_measure(classical, [2, 3]) == pytest.approx(-4.276666119016055)


class TestBallContainment:
    """Test the three-neighbour covering predicate."""

    @pytest.mark.parametrize("digits", [[3] * 7, [2] * 9, [4] * 6, [2, 3, 5, 5, 6]])
    def test_monotone_strings_hold(self, classical, exact, digits):
        """Test containment for monotone strings."""
        for p in (classical, exact):
            r = cylinder_measure(p, digits)
            assert ball_containment_check(p, digits, r)

    def test_top_of_window(self, exact):
        """Test containment near the top of the window."""
        digits = [3, 3, 4, 4]
        r = cylinder_measure(exact, digits[:-1]) * Fraction(999, 1000)
        assert ball_containment_check(exact, digits, r)

    def test_small_left_neighbour_fails(self, exact):
        """Test a ball that leaves the union."""
        # B(1/2, 1/4) leaves the union [1/3, 1] of the level-1 cylinders [1] and [2]
        assert not ball_containment_check(exact, [1, 1], Fraction(1, 4))

    def test_radius_above_window(self, classical):
        """Test a radius above the window."""
        with pytest.raises(PreconditionError, match="window"):
            ball_containment_check(classical, [2, 2], 1)

    def test_radius_below_window(self, exact):
        """Test a radius below the window."""
        with pytest.raises(PreconditionError, match="window"):
            ball_containment_check(exact, [2, 2], Fraction(1, 100))

    def test_rejects_decreasing_digits(self, exact):
        """Test that digits must not decrease."""
        with pytest.raises(PreconditionError, match="nondecreasing"):
            ball_containment_check(exact, [3, 2], Fraction(1, 20))

    def test_deep_strings(self, classical):
        """Test containment for a long increasing string."""
        digits = list(range(9, 25))
        assert ball_containment_check(classical, digits, cylinder_measure(classical, digits))
