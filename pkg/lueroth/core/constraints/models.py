"""Digit-constraint models: per-level admissible ranges, membership and sampling."""

import logging
from abc import ABC, abstractmethod
from itertools import pairwise
from typing import Any

import numpy as np

from lueroth.core.codec import DigitSequence, DigitsLike, as_digits
from lueroth.core.constraints.harmonic import harmonic_sum, minimal_band_end
from lueroth.core.constraints.specs import (
    EnvelopeFunction,
    EnvelopeSpec,
    GoodBandSpec,
    GoodSetSpec,
    JarnikSpec,
    ModelKind,
    ModelSpec,
    model_spec_adapter,
)
from lueroth.core.exceptions import DomainError, PreconditionError, SamplingError, SpecError
from lueroth.core.partition import Partition

logger = logging.getLogger(__name__)

DigitRange = tuple[int, int | None]

ENVELOPE_MIN_C = 8
ENVELOPE_GRID_END = 10**6


def uniform_integer(rng: np.random.Generator, lo: int, hi: int) -> int:
    """Uniform integer in [lo, hi], including ranges beyond int64."""
    width = hi - lo + 1
    if width <= 2**62:
        return lo + int(rng.integers(width))
    nbytes = (width.bit_length() + 7) // 8 + 8
    return lo + int.from_bytes(rng.bytes(nbytes), "little") % width


class ConstraintModel(ABC):
    """A set of points whose digit at level n lies in a prescribed range."""

    kind: ModelKind
    monotone_coupling = False

    def __init__(self, spec: ModelSpec):
        self.spec = spec

    @abstractmethod
    def admissible_range(self, level: int) -> DigitRange:
        """Closed digit range at ``level``; ``None`` as upper end means unbounded."""

    @property
    def level_homogeneous(self) -> bool:
        """Whether every level has the same range."""
        return False

    def describe(self) -> str:
        return self.spec.model_dump_json(by_alias=True, exclude_none=True)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"

    def level_size(self, level: int) -> int | None:
        lo, hi = self.admissible_range(level)
        return None if hi is None else hi - lo + 1

    def contains(self, d: DigitsLike) -> bool:
        digits = as_digits(d)
        if not digits:
            raise DomainError("contains needs a non-empty digit sequence")
        for level, digit in enumerate(digits, start=1):
            lo, hi = self.admissible_range(level)
            if digit < lo or (hi is not None and digit > hi):
                return False
        if self.monotone_coupling and any(b < a for a, b in pairwise(digits)):
            return False
        return True

    def sample_digits(self, depth: int, seed: int | None, cap: int | None = None) -> DigitSequence:
        """Draw a member prefix of length ``depth``, uniform level by level.

        Unbounded levels are capped at ``cap``. Under monotone coupling each
        digit is drawn from its level range intersected with [previous digit, oo).
        """
        if depth < 1:
            raise DomainError(f"depth must be >= 1, got {depth}")
        rng = np.random.default_rng(seed)
        digits: list[int] = []
        for level in range(1, depth + 1):
            lo, hi = self.admissible_range(level)
            if hi is None:
                hi = cap if cap is not None else self._default_cap()
            if self.monotone_coupling and digits:
                lo = max(lo, digits[-1])
            if lo > hi:
                raise SamplingError(f"no admissible digit at level {level} of {self!r}")
            digits.append(uniform_integer(rng, lo, hi))
        return DigitSequence(digits=tuple(digits), terminated=False, trusted=depth)

    def _default_cap(self) -> int:
        raise PreconditionError(f"{self!r} has unbounded levels; sampling needs a digit cap")

    def tilde_next(self, level: int) -> int:
        """Least admissible digit at ``level + 1``, the lower edge of the tilde cover."""
        return self.admissible_range(level + 1)[0]


class GoodSet(ConstraintModel):
    """Points with every digit from level n0 on exceeding N."""

    kind = ModelKind.GOODSET

    def __init__(self, spec: GoodSetSpec):
        if spec.n < 1:
            raise SpecError(f"GoodSet needs N >= 1, got {spec.n}")
        if spec.n0 < 1:
            raise SpecError(f"GoodSet needs n0 >= 1, got {spec.n0}")
        if spec.cap is not None and spec.cap <= spec.n:
            raise SpecError(f"sampling cap {spec.cap} leaves no digit above N={spec.n}")
        super().__init__(spec)
        self.n = spec.n
        self.n0 = spec.n0
        self.cap = spec.cap

    @property
    def level_homogeneous(self) -> bool:
        return self.n0 == 1

    def admissible_range(self, level: int) -> DigitRange:
        _check_level(level)
        return (self.n + 1, None) if level >= self.n0 else (1, None)

    def _default_cap(self) -> int:
        if self.cap is None:
            return super()._default_cap()
        return self.cap


class GoodBand(ConstraintModel):
    """Points with every digit in {N, ..., M}."""

    kind = ModelKind.GOODBAND

    def __init__(self, spec: GoodBandSpec):
        if spec.n < 1:
            raise SpecError(f"GoodBand needs N >= 1, got {spec.n}")
        if spec.m == "minimal":
            m = minimal_band_end(spec.n)
            spec = spec.model_copy(update={"m": m})
        elif spec.m < spec.n:
            raise SpecError(f"GoodBand needs N <= M, got N={spec.n}, M={spec.m}")
        super().__init__(spec)
        self.n = spec.n
        self.m = int(spec.m)
        self.band_sum = harmonic_sum(self.n, self.m)

    @property
    def level_homogeneous(self) -> bool:
        return True

    def admissible_range(self, level: int) -> DigitRange:
        _check_level(level)
        return self.n, self.m


class Envelope(ConstraintModel):
    """Nondecreasing digits confined to {f(n), ..., g(n)}.

    g(n) is the least integer with S_n = sum_{i=f(n)}^{g(n)} 1/i > 1.
    """

    kind = ModelKind.ENVELOPE
    monotone_coupling = True

    def __init__(self, spec: EnvelopeSpec, partition: Partition | None = None):
        if spec.eps <= 0:
            raise SpecError(f"envelope eps must be positive, got {spec.eps}")
        f = spec.f
        if f.kind == "list":
            values = f.values or ()
            if not values:
                raise SpecError("list envelopes need values")
            if min(values) < 1:
                raise SpecError("envelope values must be >= 1")
            if any(b < a for a, b in pairwise(values)):
                raise SpecError("envelope f must be nondecreasing")
        elif f.kind == "constant":
            if f.c is None or f.c < 1:
                raise SpecError("constant envelopes need c >= 1")
            logger.warning("constant envelope f = %d is bounded; digits will not diverge", f.c)
        else:
            if f.c is None:
                f = f.model_copy(update={"c": choose_envelope_offset(partition, spec.eps)})
                spec = spec.model_copy(update={"f": f})
            elif f.c < 1:
                raise SpecError("envelope offset c must be >= 1")
        super().__init__(spec)
        self.function: EnvelopeFunction = f
        self.eps = spec.eps

    def f(self, level: int) -> int:
        _check_level(level)
        fn = self.function
        if fn.kind == "constant":
            return int(fn.c or 1)
        if fn.kind == "list":
            values = fn.values or ()
            if level <= len(values):
                return values[level - 1]
            return values[-1] + (level + 1).bit_length() - (len(values) + 1).bit_length()
        return int(fn.c or ENVELOPE_MIN_C) + (level + 1).bit_length() - 1

    def g(self, level: int) -> int:
        return minimal_band_end(self.f(level))

    def level_sum(self, level: int) -> float:
        """S_n = sum_{i=f(n)}^{g(n)} 1/i."""
        return harmonic_sum(self.f(level), self.g(level))

    def admissible_range(self, level: int) -> DigitRange:
        return self.f(level), self.g(level)


class Jarnik(ConstraintModel):
    """Digits in {s_n, ..., N s_n - 1} for a diverging sequence s_n."""

    kind = ModelKind.JARNIK

    def __init__(self, spec: JarnikSpec):
        spec.s.check()
        if spec.n_factor <= 3:
            raise SpecError(f"Jarnik models need N > 3, got {spec.n_factor}")
        if not spec.s.diverges:
            logger.warning("sequence %s does not diverge", spec.s.describe())
        super().__init__(spec)
        self.sequence = spec.s
        self.n_factor = spec.n_factor

    def admissible_range(self, level: int) -> DigitRange:
        _check_level(level)
        s_n = self.sequence.term(level)
        return s_n, self.n_factor * s_n - 1


def _check_level(level: int) -> None:
    if level < 1:
        raise DomainError(f"levels start at 1, got {level}")


def choose_envelope_offset(partition: Partition | None, eps: float) -> int:
    """Least c >= 8 with a_l >= l^-(1+theta+eps) for every l in [c, 10^6]."""
    if partition is None:
        return ENVELOPE_MIN_C
    ell = np.arange(ENVELOPE_MIN_C, ENVELOPE_GRID_END + 1)
    log_a = partition.log_atoms(ell)
    failing = np.nonzero(log_a < -(1 + partition.theta + eps) * np.log(ell))[0]
    if failing.size == 0:
        return ENVELOPE_MIN_C
    c = int(ell[failing[-1]]) + 1
    if c > ENVELOPE_GRID_END:
        raise SpecError(
            f"no envelope offset c <= {ENVELOPE_GRID_END} satisfies the atom lower bound "
            f"for {partition!r}; pass f.c explicitly"
        )
    logger.info("envelope offset c=%d for %r", c, partition)
    return c


def make_model(
    kind: ModelKind | str | dict[str, Any] | ModelSpec,
    params: dict[str, Any] | None = None,
    partition: Partition | None = None,
) -> ConstraintModel:
    """Build a constraint model.

    Args:
        kind: Model kind, a full spec dict, or a parsed spec.
        params: Parameters when ``kind`` is a bare kind, e.g. ``{"N": 2, "M": 4}``.
        partition: Used to pick the envelope offset; models are otherwise
            partition independent.

    Returns:
        ConstraintModel for the spec.
    """
    if isinstance(kind, (GoodSetSpec, GoodBandSpec, EnvelopeSpec, JarnikSpec)):
        spec: ModelSpec = kind
    else:
        payload = dict(kind) if isinstance(kind, dict) else {"kind": ModelKind(kind).value}
        payload.update(params or {})
        spec = model_spec_adapter.validate_python(payload)

    if isinstance(spec, GoodSetSpec):
        return GoodSet(spec)
    if isinstance(spec, GoodBandSpec):
        return GoodBand(spec)
    if isinstance(spec, EnvelopeSpec):
        return Envelope(spec, partition)
    return Jarnik(spec)


def model_from_json(text: str, partition: Partition | None = None) -> ConstraintModel:
    return make_model(model_spec_adapter.validate_json(text), partition=partition)


def admissible_range(model: ConstraintModel, level: int) -> DigitRange:
    return model.admissible_range(level)


def contains(model: ConstraintModel, digits: DigitsLike) -> bool:
    return model.contains(digits)


def sample_digits(
    model: ConstraintModel, depth: int, seed: int | None, cap: int | None = None
) -> DigitSequence:
    return model.sample_digits(depth, seed, cap)
