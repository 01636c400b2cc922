"""Tests for digit-constraint models."""

import logging
import math

import pytest
from pydantic import ValidationError

from lueroth.config import settings
from lueroth.core.constraints import (
    Envelope,
    GoodBand,
    Jarnik,
    SequenceKind,
    SequenceSpec,
    admissible_range,
    contains,
    harmonic_sum,
    make_model,
    minimal_band_end,
    model_from_json,
    sample_digits,
)
from lueroth.core.exceptions import DomainError, PreconditionError, SpecError
from lueroth.core.partition import PartitionSpec, make_partition


def jarnik(base: int = 2, n: int = 4, kind: SequenceKind = SequenceKind.GEOMETRIC) -> Jarnik:
    model = make_model({"kind": "jarnik", "s": {"kind": kind.value, "base": base}, "N": n})
    assert isinstance(model, Jarnik)
    return model


class TestMinimalBand:
    """Test the least band end with harmonic sum above one."""

    @pytest.mark.parametrize("n,m", [(1, 2), (2, 4), (10, 26), (100, 270)])
    def test_values(self, n, m):
        """Test known minimal band ends."""
        assert minimal_band_end(n) == m
        assert harmonic_sum(n, m) > 1
        assert harmonic_sum(n, m - 1) <= 1

    def test_large_start(self):
        """Test that M is close to e N for large N."""
        n = 10**6
        m = minimal_band_end(n)
        assert harmonic_sum(n, m) > 1 >= harmonic_sum(n, m - 1)
        assert m == pytest.approx(math.e * n, rel=1e-3)

    def test_overflow(self, monkeypatch):
        """Test the search limit."""
        monkeypatch.setattr(settings, "band_search_limit", 1000)
        with pytest.raises(SpecError, match="search limit"):
            minimal_band_end(5003)


class TestMakeModel:
    """Test model construction and validation."""

    def test_goodband_minimal(self):
        """Test a GoodBand built from N alone."""
        model = make_model("goodband", {"N": 2})
        assert isinstance(model, GoodBand)
        assert (model.n, model.m) == (2, 4)
        assert model.band_sum == pytest.approx(13 / 12)

    def test_goodband_from_json(self):
        """Test a GoodBand JSON spec."""
        model = model_from_json('{"kind":"goodband","N":100,"M":"minimal"}')
        assert model.admissible_range(1) == (100, 270)

    def test_goodband_rejects_empty_band(self):
        """Test that M must be at least N."""
        with pytest.raises(SpecError, match="N <= M"):
            make_model("goodband", {"N": 5, "M": 4})

    def test_jarnik_from_json(self):
        """Test a Jarnik JSON spec."""
        model = model_from_json('{"kind":"jarnik","s":{"kind":"geometric","base":2},"N":4}')
        assert model.admissible_range(3) == (8, 31)

    @pytest.mark.parametrize("factor", [1, 2, 3])
    def test_jarnik_rejects_small_factor(self, factor):
        """Test that the Jarnik factor must exceed 3."""
        with pytest.raises(SpecError, match="N > 3"):
            jarnik(n=factor)

    def test_envelope_rejects_decreasing_f(self):
        """Test that the envelope must be nondecreasing."""
        with pytest.raises(SpecError, match="nondecreasing"):
            make_model({"kind": "envelope", "f": {"kind": "list", "values": [9, 12, 10]}})

    def test_unknown_kind(self):
        """Test an unknown model kind."""
        with pytest.raises(ValueError):
            make_model("cantor", {})

    def test_bad_sequence(self):
        """Test an invalid sequence base."""
        with pytest.raises(SpecError, match="base"):
            make_model({"kind": "jarnik", "s": {"kind": "geometric", "base": 1}})

    def test_missing_band_start(self):
        """Test that GoodBand needs N."""
        with pytest.raises(ValidationError):
            make_model({"kind": "goodband"})


class TestAdmissibleRange:
    """Test per-level digit ranges."""

    def test_goodset(self):
        """Test GoodSet ranges at every level."""
        model = make_model("goodset", {"N": 5})
        for level in (1, 2, 50):
            assert admissible_range(model, level) == (6, None)

    def test_goodset_free_prefix(self):
        """Test unconstrained levels before n0."""
        model = make_model("goodset", {"N": 5, "n0": 3})
        assert admissible_range(model, 2) == (1, None)
        assert admissible_range(model, 3) == (6, None)
        assert not model.level_homogeneous

    def test_jarnik(self):
        """Test a Jarnik level range."""
        assert admissible_range(jarnik(), 3) == (8, 31)

    def test_goodband(self):
        """Test a GoodBand level range."""
        assert admissible_range(make_model("goodband", {"N": 2, "M": 4}), 7) == (2, 4)

    def test_jarnik_level_sizes(self):
        """Test Jarnik level sizes."""
        model = jarnik(base=3, n=5)
        for level in range(1, 12):
            lo, hi = model.admissible_range(level)
            assert lo <= hi
            assert model.level_size(level) == 4 * 3**level

    def test_rejects_level_zero(self):
        """Test that levels start at 1."""
        with pytest.raises(DomainError):
            admissible_range(jarnik(), 0)

    def test_envelope_windows(self):
        """Test envelope windows over ten thousand levels."""
        model = make_model({"kind": "envelope"})
        assert isinstance(model, Envelope)
        previous = 0
        for level in range(1, 10_001):
            f, g = model.admissible_range(level)
            assert f == 8 + int(math.floor(math.log2(level + 1)))
            assert f >= previous
            assert f < g <= 8 * f
            s_n = model.level_sum(level)
            assert 1 < s_n <= 1 + 1 / f
            previous = f

    def test_envelope_offset_for_classical(self):
        """Test the envelope offset for the classical partition."""
        p = make_partition(PartitionSpec.classical())
        model = make_model({"kind": "envelope"}, partition=p)
        assert model.spec.f.c == 8

    def test_envelope_list_extends(self):
        """Test that a listed envelope keeps growing."""
        model = make_model({"kind": "envelope", "f": {"kind": "list", "values": [9, 9, 10]}})
        assert [model.f(level) for level in (1, 2, 3, 4, 7, 15)] == [9, 9, 10, 10, 11, 12]


class TestContains:
    """Test membership."""

    def test_envelope_monotone_coupling(self):
        """Test that envelope digits must be nondecreasing."""
        model = make_model({"kind": "envelope", "f": {"kind": "constant", "c": 2}})
        assert not contains(model, [3, 2, 3])
        assert contains(model, [2, 3, 3])

    def test_goodband(self):
        """Test GoodBand membership."""
        assert contains(make_model("goodband", {"N": 2, "M": 4}), [2, 4, 3])

    def test_jarnik(self):
        """Test Jarnik membership."""
        model = jarnik()
        assert contains(model, [2, 5, 8])
        assert not contains(model, [2, 5, 32])

    def test_goodset(self):
        """Test GoodSet membership."""
        model = make_model("goodset", {"N": 5})
        assert contains(model, [6, 100, 10**9])
        assert not contains(model, [6, 5])

    def test_rejects_empty(self):
        """Test that membership needs digits."""
        with pytest.raises(DomainError):
            contains(jarnik(), [])


class TestSampling:
    """Test seeded sampling."""

    def test_deterministic(self):
        """Test that a seed fixes the sample."""
        model = make_model({"kind": "envelope"})
        assert sample_digits(model, 12, seed=3) == sample_digits(model, 12, seed=3)

    def test_singleton_band(self):
        """Test sampling from a one-digit band."""
        model = make_model("goodband", {"N": 3, "M": 3})
        assert sample_digits(model, 4, seed=0).digits == (3, 3, 3, 3)

    def test_jarnik_levels(self):
        """Test that Jarnik samples are members."""
        model = jarnik()
        for seed in range(20):
            assert contains(model, sample_digits(model, 5, seed))

    def test_huge_windows(self):
        """Test sampling from doubly exponential windows."""
        model = jarnik(kind=SequenceKind.DOUBLY_EXPONENTIAL)
        sample = sample_digits(model, 7, seed=1)
        assert contains(model, sample)
        assert sample.digits[-1] >= 2**128

    @pytest.mark.parametrize(
        "spec",
        [
            {"kind": "goodband", "N": 10},
            {"kind": "envelope"},
            {"kind": "jarnik", "s": {"kind": "polynomial-factorial", "c": 1}},
            {"kind": "goodset", "N": 7, "cap": 50},
        ],
    )
    def test_samples_are_members(self, spec):
        """Test that samples of each model are members."""
        model = make_model(spec)
        for seed in range(10_000):
            assert contains(model, sample_digits(model, 6, seed))

    def test_goodset_needs_cap(self):
        """Test that GoodSet sampling needs a cap."""
        model = make_model("goodset", {"N": 7})
        with pytest.raises(PreconditionError, match="cap"):
            sample_digits(model, 3, seed=0)
        assert contains(model, sample_digits(model, 3, seed=0, cap=20))


class TestSequences:
    """Test sequence terms and log sums."""

    @pytest.mark.parametrize(
        "spec",
        [
            SequenceSpec(kind=SequenceKind.GEOMETRIC, base=3),
            SequenceSpec(kind=SequenceKind.DOUBLY_EXPONENTIAL, base=2),
            SequenceSpec(kind=SequenceKind.POLYNOMIAL_FACTORIAL, c=2),
            SequenceSpec(kind=SequenceKind.CUSTOM, values=(2, 3, 7, 20)),
        ],
    )
    def test_log_product_matches_terms(self, spec):
        """Test log products against their terms."""
        for n in (1, 2, 5, 9):
            expected = math.fsum(math.log(spec.term(i)) for i in range(1, n + 1))
            assert spec.log_product(n) == pytest.approx(expected, rel=1e-12)

    def test_custom_extension_warns(self, caplog):
        """Test the warning when a custom sequence is extended."""
        spec = SequenceSpec(kind=SequenceKind.CUSTOM, values=(5, 10, 20, 41))
        with caplog.at_level(logging.WARNING):
            assert spec.term(5) == 84
        assert "repeating the last ratio" in caplog.text

    def test_analytic_tau(self):
        """Test the analytic tau of each sequence kind."""
        assert SequenceSpec(kind=SequenceKind.GEOMETRIC).analytic_tau == 0.0
        assert SequenceSpec(kind=SequenceKind.DOUBLY_EXPONENTIAL).analytic_tau == 1.0
        assert SequenceSpec(kind=SequenceKind.CUSTOM, values=(2, 4)).analytic_tau is None
