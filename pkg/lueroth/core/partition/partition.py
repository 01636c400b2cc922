"""Closed-form partitions of (0, 1] and their atoms."""

import bisect
import logging
import math
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, NamedTuple, Union

import numpy as np
from mpmath.ctx_mp import MPContext

from lueroth.config import settings
from lueroth.core.exceptions import DomainError, SpecError
from lueroth.core.partition.spec import (
    AsymptoticReport,
    AsymptoticRow,
    PartitionKind,
    PartitionSpec,
    PsiType,
)

logger = logging.getLogger(__name__)

# A real number as handled by a partition: an mpmath float bound to the
# partition's context, or a Fraction in exact classical mode.
Real = Union[Fraction, Any]
RealLike = Union[int, float, str, Fraction, Any]

GUARD_BITS = 16
PRECISION_STEP = 64


@lru_cache(maxsize=128)
def working_context(bits: int) -> MPContext:
    """Shared mpmath context at a fixed precision. Never mutated after creation."""
    ctx = MPContext()
    ctx.prec = bits
    return ctx


def padded_bits(bits: int) -> int:
    """Round a precision up to the next multiple of PRECISION_STEP."""
    return -(-bits // PRECISION_STEP) * PRECISION_STEP


def is_mpf(value: Any) -> bool:
    return hasattr(value, "_mpf_")


class TailDecay(NamedTuple):
    """Atoms behave like n^(-p) * (log n)^gamma."""

    p: float
    gamma: float

    def power_sum_diverges(self, s: float) -> bool:
        """Whether sum_n a_n^s diverges."""
        exponent = self.p * s
        if math.isclose(exponent, 1.0, rel_tol=1e-12, abs_tol=0.0):
            return self.gamma * s >= -1.0
        return exponent < 1.0


class Partition:
    """Immutable evaluator for tails t_n and atoms a_n = t_n - t_(n+1).

    Atom A_n is the interval (t_(n+1), t_n]; atoms are ordered right to left.
    """

    def __init__(self, spec: PartitionSpec, precision: int):
        self.spec = spec
        self.precision = precision
        self.kind = spec.kind
        self.theta = 1.0 if spec.kind == PartitionKind.CLASSICAL else float(spec.theta)
        self.exact = spec.exact
        self.context = working_context(precision)

        self._table: list[float] = list(spec.table or ())
        self._neg_table = [-value for value in self._table]
        self._table_log_atoms = np.array(
            [float(self.context.log(self.atom(n))) for n in range(1, len(self._table) + 1)],
            dtype=np.float64,
        )

    def __repr__(self) -> str:
        return f"Partition(kind={self.kind.value}, theta={self.theta}, precision={self.precision})"

    # ------------------------------------------------------------------
    # Scalars
    # ------------------------------------------------------------------

    def coerce(self, value: RealLike) -> Real:
        """Convert a user value to this partition's number type.

        Strings may be decimals or ratios such as ``"5/12"``.
        """
        if self.exact:
            if isinstance(value, Fraction):
                return value
            if is_mpf(value):
                man, exp = value.man_exp
                return Fraction(man) * Fraction(2) ** exp
            return Fraction(value)
        ctx = self.context
        if isinstance(value, str) and "/" in value:
            value = Fraction(value)
        if isinstance(value, Fraction):
            return ctx.fdiv(value.numerator, value.denominator)
        return ctx.mpf(value)

    def zero(self) -> Real:
        return Fraction(0) if self.exact else self.context.zero

    def one(self) -> Real:
        return Fraction(1) if self.exact else self.context.one

    def to_float(self, value: Real) -> float:
        return float(value)

    def format(self, value: Real, digits: int = 17) -> str:
        """Decimal string with ``digits`` significant digits."""
        if self.exact:
            value = self.context.fdiv(value.numerator, value.denominator)
        return str(self.context.nstr(value, digits))

    def with_precision(self, bits: int) -> "Partition":
        """The same partition at another working precision."""
        if bits == self.precision:
            return self
        return _clone(self.spec, bits)

    # ------------------------------------------------------------------
    # Tails and atoms
    # ------------------------------------------------------------------

    def tail(self, n: int) -> Real:
        """t_n, the measure of the union of atoms A_m with m >= n."""
        _check_index(n)
        if self.exact:
            return Fraction(1, n)
        return self._tail_in(self.context, n)

    def atom(self, n: int) -> Real:
        """a_n = t_n - t_(n+1), computed at raised precision and rounded once."""
        _check_index(n)
        if self.exact:
            return Fraction(1, n * (n + 1))
        if self.kind == PartitionKind.CLASSICAL:
            return self.context.fdiv(1, n * (n + 1))
        wide = working_context(padded_bits(self.precision + n.bit_length() + GUARD_BITS))
        return self.context.mpf(self._tail_in(wide, n) - self._tail_in(wide, n + 1))

    def measures(self, n: int) -> tuple[Real, Real]:
        return self.tail(n), self.atom(n)

    def atom_bits(self, n: int) -> float:
        """log2(1 / a_n), the bits of precision one map step consumes."""
        if self.kind == PartitionKind.CLASSICAL:
            return math.log2(n) + math.log2(n + 1)
        return -float(self.log_atoms([n])[0]) / math.log(2.0)

    def _tail_in(self, ctx: MPContext, n: int) -> Any:
        if self.kind == PartitionKind.CLASSICAL:
            return ctx.fdiv(1, n)
        if self.kind == PartitionKind.TABLE:
            size = len(self._table)
            if n <= size:
                return ctx.mpf(self._table[n - 1])
            return ctx.mpf(self._table[-1]) * ctx.power(ctx.fdiv(size, n), self.theta)

        value = ctx.power(n, -self.theta) if self.theta else ctx.one
        psi = self.spec.psi
        if psi.type == PsiType.LOG_POWER:
            value *= ctx.power(ctx.log(n + 1) / ctx.log(2), psi.beta)
        elif psi.type == PsiType.RECIPROCAL_LOG:
            value *= ctx.log(1 + ctx.e) / ctx.log(n + ctx.e)
        return value

    # ------------------------------------------------------------------
    # Log-space atoms
    # ------------------------------------------------------------------

    def log_atoms(self, indices: Any) -> np.ndarray:
        """Vectorised float64 log a_n for an array of indices."""
        n = np.asarray(indices, dtype=np.float64)
        if n.size and np.min(n) < 1:
            raise DomainError("atom indices must be >= 1")
        if self.kind == PartitionKind.CLASSICAL:
            return -(np.log(n) + np.log1p(n))
        if self.kind == PartitionKind.TABLE:
            out = np.empty_like(n)
            inside = n <= len(self._table)
            out[inside] = self._table_log_atoms[n[inside].astype(np.int64) - 1]
            out[~inside] = self._log_atom_formula(n[~inside], np)
            return out
        return self._log_atom_formula(n, np)

    def log_atom_continuous(self, x: Any, ctx: MPContext | None = None) -> Any:
        """log a(x) on the continuous extension, as an mpmath float.

        Evaluated in ``ctx`` when given, else at the partition precision. For table
        partitions only the continuation beyond the table is available.
        """
        ctx = ctx or self.context
        if self.kind == PartitionKind.TABLE and x <= len(self._table):
            raise DomainError("continuous atoms exist only beyond the table")
        return self._log_atom_formula(ctx.mpf(x), ctx)

    def _log_atom_formula(self, x: Any, xp: Any) -> Any:
        # log a = log t(x) + log(1 - t(x+1)/t(x))
        return self._log_tail(x, xp) + xp.log(-xp.expm1(self._log_step(x, xp)))

    def _log_tail(self, x: Any, xp: Any) -> Any:
        if self.kind == PartitionKind.TABLE:
            size = len(self._table)
            return math.log(self._table[-1]) + self.theta * (math.log(size) - xp.log(x))
        value = -self.theta * xp.log(x)
        psi = self.spec.psi
        if psi.type == PsiType.LOG_POWER:
            value = value + psi.beta * (xp.log(xp.log(x + 1)) - math.log(math.log(2.0)))
        elif psi.type == PsiType.RECIPROCAL_LOG:
            value = value + math.log(math.log(1.0 + math.e)) - xp.log(xp.log(x + xp.e))
        return value

    def _log_step(self, x: Any, xp: Any) -> Any:
        """log t(x+1) - log t(x), always negative."""
        value = -self.theta * xp.log1p(1 / x)
        if self.kind == PartitionKind.TABLE:
            return value
        psi = self.spec.psi
        if psi.type == PsiType.LOG_POWER:
            value = value + psi.beta * xp.log1p(xp.log1p(1 / (x + 1)) / xp.log(x + 1))
        elif psi.type == PsiType.RECIPROCAL_LOG:
            value = value - xp.log1p(xp.log1p(1 / (x + xp.e)) / xp.log(x + xp.e))
        return value

    def tail_decay(self) -> TailDecay:
        """Polynomial and logarithmic decay orders of the atoms."""
        psi = self.spec.psi
        if self.kind != PartitionKind.POWER or psi.type == PsiType.CONSTANT:
            return TailDecay(1.0 + self.theta, 0.0)
        if psi.type == PsiType.LOG_POWER:
            return TailDecay(1.0 + self.theta, psi.beta)
        if self.theta > 0:
            return TailDecay(1.0 + self.theta, -1.0)
        return TailDecay(1.0, -2.0)

    @cached_property
    def eventually_decreasing_from(self) -> int:
        """Least n_dec with a_n < a_(n-1) for every scanned n > n_dec."""
        if self.kind == PartitionKind.CLASSICAL or (
            self.kind == PartitionKind.POWER and self.spec.psi.type == PsiType.CONSTANT
        ):
            return 1
        horizon = max(settings.decrease_horizon, len(self._table) + 2)
        log_a = self.log_atoms(np.arange(1, horizon + 1))
        rising = np.nonzero(np.diff(log_a) >= 0)[0]
        n_dec = int(rising[-1]) + 2 if rising.size else 1
        logger.debug("%r decreases from n=%d (scanned to %d)", self, n_dec, horizon)
        return n_dec

    # ------------------------------------------------------------------
    # Atom location
    # ------------------------------------------------------------------

    def locate_atom(self, x: RealLike) -> int:
        """The unique n with t_(n+1) < x <= t_n."""
        value = self.coerce(x)
        if not 0 < value <= 1:
            raise DomainError(f"locate_atom needs 0 < x <= 1, got {x}")
        if self.exact:
            return value.denominator // value.numerator
        if self.kind == PartitionKind.CLASSICAL:
            return self._locate_classical(value)
        return self._refine_index(value, max(self._estimate_index(value), 1))

    def _locate_classical(self, x: Any) -> int:
        """floor(1/x) corrected by a single tail comparison.

        The rounded quotient is off by at most one ulp, so only the neighbour on
        the side of its nearer integer can be the answer.
        """
        ctx = self.context
        quotient = 1 / x
        n = int(ctx.floor(quotient))
        if n.bit_length() > self.precision - GUARD_BITS:
            return self._refine_index(x, n)
        if quotient - n < 0.5:
            if n > 1 and x > self.tail(n):
                n -= 1
        elif x <= self.tail(n + 1):
            n += 1
        return n

    def _estimate_index(self, x: Any) -> int:
        ctx = self.context
        if self.kind == PartitionKind.TABLE:
            count = bisect.bisect_right(self._neg_table, -float(x))
            size = len(self._table)
            if count < size:
                return max(count, 1)
            return int(ctx.floor(size * ctx.power(ctx.mpf(self._table[-1]) / x, 1 / self.theta)))

        psi = self.spec.psi
        if self.theta == 0:
            # reciprocal-log only: t(n) = log(1+e) / log(n+e)
            return int(ctx.floor(ctx.exp(ctx.log(1 + ctx.e) / x) - ctx.e))
        estimate = ctx.power(x, -1 / self.theta)
        if psi.type != PsiType.CONSTANT:
            # fixed point of n = (psi(n) / x)^(1/theta)
            for _ in range(3):
                factor = self._psi_ratio(ctx, max(estimate, ctx.one))
                estimate = ctx.power(factor / x, 1 / self.theta)
        return int(ctx.floor(estimate))

    def _psi_ratio(self, ctx: MPContext, n: Any) -> Any:
        psi = self.spec.psi
        if psi.type == PsiType.LOG_POWER:
            return ctx.power(ctx.log(n + 1) / ctx.log(2), psi.beta)
        if psi.type == PsiType.RECIPROCAL_LOG:
            return ctx.log(1 + ctx.e) / ctx.log(n + ctx.e)
        return ctx.one

    def _refine_index(self, x: Real, guess: int) -> int:
        """Gallop from ``guess`` to a bracket t(lo) >= x > t(hi), then bisect."""
        tail = self.tail
        step = 1
        if tail(guess) < x:
            hi, lo = guess, max(1, guess - 1)
            while tail(lo) < x:
                hi = lo
                step *= 2
                lo = max(1, guess - step)
        else:
            lo, hi = guess, guess + 1
            while tail(hi) >= x:
                lo = hi
                step *= 2
                hi = guess + step
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if tail(mid) >= x:
                lo = mid
            else:
                hi = mid
        return lo

    # ------------------------------------------------------------------
    # Diagnostics
    # ------------------------------------------------------------------

    def asymptotic_report(self, indices: list[int]) -> AsymptoticReport:
        """Rows of n * a_n / t_n and a_n / a_(n+1)."""
        if not indices:
            raise DomainError("asymptotic_report needs at least one index")
        rows = []
        for n in indices:
            t_n, a_n = self.measures(n)
            rows.append(
                AsymptoticRow(
                    n=n,
                    mdt_ratio=float(n * a_n / t_n),
                    atom_ratio=float(a_n / self.atom(n + 1)),
                )
            )
        return AsymptoticReport(theta=self.theta, rows=rows)


def _check_index(n: int) -> None:
    if n < 1:
        raise DomainError(f"partition index must be >= 1, got {n}")


@lru_cache(maxsize=32)
def _clone(spec: PartitionSpec, bits: int) -> Partition:
    return Partition(spec, bits)


def validate_spec(spec: PartitionSpec) -> None:
    """Raise SpecError unless ``spec`` describes a partition of (0, 1]."""
    if spec.theta < 0:
        raise SpecError(f"theta must be >= 0, got {spec.theta}")
    if spec.exact and spec.kind != PartitionKind.CLASSICAL:
        raise SpecError("exact rational mode is only available for the classical partition")

    if spec.kind == PartitionKind.CLASSICAL:
        if spec.theta != 1.0 or spec.psi.type != PsiType.CONSTANT or spec.table:
            raise SpecError("the classical partition has theta = 1, constant psi and no table")
        return

    if spec.kind == PartitionKind.TABLE:
        table = spec.table or ()
        if not table:
            raise SpecError("custom-table partitions need a non-empty table")
        if table[0] != 1.0:
            raise SpecError("custom tables must start at t_1 = 1")
        if any(value <= 0 for value in table):
            raise SpecError("custom-table tails must be positive")
        if any(b >= a for a, b in zip(table, table[1:])):
            raise SpecError("custom-table tails must be strictly decreasing")
        if spec.theta <= 0:
            raise SpecError("custom tables continue as t_L (L/n)^theta and need theta > 0")
        return

    if spec.table:
        raise SpecError("a table is only allowed for kind custom-table")
    psi = spec.psi
    if spec.theta == 0 and psi.type != PsiType.RECIPROCAL_LOG:
        raise SpecError("theta = 0 needs the reciprocal-log psi; the tails would not vanish")
    if psi.type == PsiType.LOG_POWER and psi.beta >= 2 * spec.theta * math.log(2.0):
        raise SpecError(
            f"log-power beta must be < 2 theta ln 2 = {2 * spec.theta * math.log(2.0):.6g} "
            "for strictly decreasing tails"
        )


def make_partition(spec: PartitionSpec, precision: int | None = None) -> Partition:
    """Validate ``spec`` and build a partition.

    Args:
        spec: Partition description.
        precision: Working mantissa bits; falls back to ``spec.precision_bits``
            and then to ``settings.precision``.

    Returns:
        An immutable Partition.
    """
    validate_spec(spec)
    bits = precision or spec.precision_bits or settings.precision
    if bits < 53:
        raise SpecError(f"precision must be at least 53 bits, got {bits}")
    partition = Partition(spec, bits)
    logger.debug("Built %r", partition)
    return partition


def measures(p: Partition, n: int) -> tuple[Real, Real]:
    """(t_n, a_n)."""
    return p.measures(n)


def locate_atom(p: Partition, x: RealLike) -> int:
    return p.locate_atom(x)


def asymptotic_report(p: Partition, indices: list[int]) -> AsymptoticReport:
    return p.asymptotic_report(indices)
