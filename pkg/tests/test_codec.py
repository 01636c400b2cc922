"""Tests for the digit map and the series codec."""

from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from lueroth.core.codec import DigitSequence, apply_map, canonicalize, decode, encode
from lueroth.core.exceptions import DomainError
from lueroth.core.partition import PartitionSpec, PsiSpec, PsiType, make_partition


@pytest.fixture
def classical():
    return make_partition(PartitionSpec.classical())


@pytest.fixture
def exact():
    return make_partition(PartitionSpec.classical(exact=True))


def cylinder_diameter(p, digits):
    product = p.one()
    for n in digits:
        product *= p.atom(n)
    return product


class TestApplyMap:
    """Test the digit map."""

    def test_right_endpoint_maps_to_zero(self, classical):
        """Test that a tail point maps to zero."""
        assert apply_map(classical, 0.5) == 0

    def test_interior_point(self, classical):
        """Test the map at an interior point."""
        assert float(apply_map(classical, 0.4)) == pytest.approx(0.6, abs=1e-15)

    def test_zero_is_fixed(self, classical):
        """Test that zero is fixed."""
        assert apply_map(classical, 0) == 0

    def test_exact_rational(self, exact):
        """Test the map on rationals."""
        assert apply_map(exact, Fraction(2, 5)) == Fraction(3, 5)

    @pytest.mark.parametrize("x", [-0.25, 1.25])
    def test_rejects_outside_unit_interval(self, classical, x):
        """Test points outside [0, 1]."""
        with pytest.raises(DomainError):
            apply_map(classical, x)

    def test_image_lies_in_unit_interval(self):
        """Test that images stay in [0, 1)."""
        p = make_partition(PartitionSpec(theta=0.5))
        for x in np.random.default_rng(3).uniform(1e-6, 1.0, size=200):
            y = apply_map(p, float(x))
            assert 0 <= y < 1


class TestEncode:
    """Test digit extraction."""

    def test_periodic_orbit(self, classical):
        """Test the periodic expansion of 0.4."""
        result = encode(classical, 0.4, k_max=6)
        assert result.digits == (2, 1, 1, 2, 1, 1)
        assert not result.terminated

    def test_tail_point_terminates(self, classical):
        """Test that a tail point has a single digit."""
        result = encode(classical, "1/3", k_max=4)
        assert result.digits == (3,)
        assert result.terminated

    def test_finite_expansion_is_canonical(self, classical):
        """Test that finite expansions come out canonical."""
        result = encode(classical, "5/12", k_max=4)
        assert result.digits == (2, 2)
        assert result.terminated

    def test_exact_mode(self, exact):
        """Test encoding in exact mode."""
        assert encode(exact, Fraction(5, 12), k_max=4).digits == (2, 2)
        assert encode(exact, Fraction(2, 5), k_max=6).digits == (2, 1, 1, 2, 1, 1)

    def test_one_has_single_digit_expansion(self, classical):
        """Test the expansion of 1."""
        result = encode(classical, 1, k_max=3)
        assert result.digits == (1,)
        assert result.terminated
        assert result.is_canonical

    def test_rejects_zero(self, classical):
        """Test that zero has no expansion."""
        with pytest.raises(DomainError):
            encode(classical, 0, k_max=3)

    def test_rejects_oversized_k_max(self, classical):
        """Test the k_max limit."""
        with pytest.raises(DomainError, match="k_max"):
            encode(classical, 0.3, k_max=10**6)

    def test_deep_expansions_stay_trusted(self, classical):
        """Test that 60-digit float expansions are fully trusted."""
        rng = np.random.default_rng(11)
        for x in rng.uniform(0.0, 1.0, size=50):
            result = encode(classical, float(x), k_max=60)
            assert result.trusted == len(result.digits) == 60

    def test_shift_property(self, classical):
        """Test that encoding the image drops the first digit."""
        rng = np.random.default_rng(5)
        for x in rng.uniform(0.0, 1.0, size=200):
            full = encode(classical, float(x), k_max=20)
            tail = encode(classical, apply_map(classical, float(x)), k_max=19)
            assert full.digits[1:] == tail.digits

    def test_full_length_when_the_map_stays_positive(self, classical):
        """Test that a non-terminating orbit yields exactly k_max digits."""
        result = encode(classical, 0.1987255347936031, k_max=20)
        assert len(result.digits) == 20
        assert result.trusted == 20
        assert not result.terminated

    def test_periodic_rational_at_depth(self, classical):
        """Test that 2/7 keeps its period (3, 1, 1) once the precision is raised."""
        result = encode(classical, "2/7", k_max=60)
        assert result.digits == (3, 1, 1) * 20
        assert result.trusted == 60
        assert not result.terminated

    def test_power_partition_raises_precision(self):
        """Test that deep power-partition orbits are recomputed until trusted."""
        p = make_partition(PartitionSpec(theta=0.5))
        rng = np.random.default_rng(23)
        for x in rng.uniform(0.0, 1.0, size=20):
            result = encode(p, float(x), k_max=60)
            assert result.trusted == len(result.digits) == 60

    def test_power_partition_digits(self):
        """Test a tail point of a power partition."""
        p = make_partition(PartitionSpec(theta=2.0))
        # t_3 = 1/9 is a tail point
        result = encode(p, "1/9", k_max=5)
        assert result.digits == (3,)
        assert result.terminated


class TestDecode:
    """Test series evaluation."""

    @pytest.mark.parametrize(
        "digits,expected",
        [([2], Fraction(1, 2)), ([2, 2], Fraction(5, 12)), ([1, 2], Fraction(3, 4))],
    )
    def test_classical_examples(self, exact, classical, digits, expected):
        """Test classical values in both number modes."""
        assert decode(exact, digits) == expected
        value = decode(classical, digits)
        assert abs(value - classical.coerce(expected)) < classical.context.ldexp(1, -125)

    def test_classical_is_correctly_rounded(self, exact, classical):
        """Test that a long classical series rounds once from its exact value."""
        digits = [3, 1, 1] * 20 + [7, 250, 2]
        assert decode(classical, digits) == classical.coerce(decode(exact, digits))

    def test_rejects_empty(self, classical):
        """Test that an empty sequence cannot be decoded."""
        with pytest.raises(DomainError):
            decode(classical, [])

    def test_accepts_digit_sequence(self, exact):
        """Test decoding a DigitSequence."""
        assert decode(exact, DigitSequence.parse("2,2")) == Fraction(5, 12)

    @pytest.mark.parametrize(
        "spec",
        [
            PartitionSpec.classical(),
            PartitionSpec(theta=0.5),
            PartitionSpec(theta=1.0, psi=PsiSpec(type=PsiType.LOG_POWER, beta=0.5)),
        ],
    )
    def test_round_trip_within_cylinder_diameter(self, spec):
        """Test that decoded values stay within the cylinder."""
        p = make_partition(spec)
        # compare well below the diameter of deep cylinders
        wide = p.with_precision(512)
        rng = np.random.default_rng(7)
        for x in rng.uniform(0.0, 1.0, size=100):
            digits = encode(p, float(x), k_max=30)
            error = abs(decode(wide, digits) - wide.coerce(float(x)))
            assert error <= cylinder_diameter(wide, digits.digits)

    def test_round_trip_is_tight_for_classical(self, classical):
        """Test classical round trips to 1e-6."""
        rng = np.random.default_rng(17)
        for x in rng.uniform(0.0, 1.0, size=100):
            digits = encode(classical, float(x), k_max=30)
            assert abs(decode(classical, digits) - float(x)) <= 1e-6


class TestCanonicalize:
    """Test rewriting of finite expansions."""

    @pytest.mark.parametrize(
        "digits,expected",
        [([2, 1], (3,)), ([2, 3], (2, 3)), ([1], (1,)), ([2, 1, 1], (2, 2)), ([1, 1], (2,))],
    )
    def test_rewrites(self, digits, expected):
        """Test trailing-one rewrites."""
        assert canonicalize(digits).digits == expected

    def test_preserves_value_exactly(self, exact):
        """Test that rewriting keeps the exact value."""
        for digits in ([2, 1], [3, 5, 1], [4, 1, 1], [1, 1, 1, 1]):
            assert decode(exact, canonicalize(digits)) == decode(exact, digits)

    def test_idempotent(self):
        """Test that canonicalizing twice changes nothing."""
        once = canonicalize([5, 2, 1, 1])
        assert canonicalize(once) == once

    def test_truncations_untouched(self):
        """Test that truncated sequences are returned as is."""
        truncated = DigitSequence(digits=(2, 1), terminated=False)
        assert canonicalize(truncated) is truncated


class TestDigitSequence:
    """Test the digit model."""

    def test_rejects_zero_digit(self):
        """Test that digits must be positive."""
        with pytest.raises(ValidationError):
            DigitSequence(digits=(2, 0))

    def test_json_is_integer_array(self):
        """Test JSON serialization of digits."""
        sequence = DigitSequence.finite([2, 2])
        assert sequence.model_dump()["digits"] == (2, 2)
        assert '"digits":[2,2]' in sequence.model_dump_json()
