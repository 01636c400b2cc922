"""The digit map L(x) = (t_n - x) / a_n and the series codec built on it."""

import logging
import math
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, Field

from lueroth.config import settings
from lueroth.core.codec.digits import DigitSequence, DigitsLike, as_digits
from lueroth.core.exceptions import DomainError
from lueroth.core.partition import Partition, PartitionKind, Real, padded_bits
from lueroth.core.partition.partition import GUARD_BITS, RealLike, is_mpf

logger = logging.getLogger(__name__)


class _Orbit(BaseModel):
    digits: list[int] = Field(default_factory=list)
    terminated: bool = False
    trusted: int = 0
    lost_bits: float = 0.0
    exhausted: bool = False


def _step(p: Partition, value: Real, n: int) -> Real:
    if p.exact:
        return (n + 1) - value * (n * (n + 1))
    if p.kind == PartitionKind.CLASSICAL:
        # (1/n - x) * n(n+1) in exact arithmetic; the orbit of a dyadic point
        # stays on its grid, so mantissas never grow
        ctx = p.context
        return ctx.fsub(n + 1, ctx.fmul(value, n * (n + 1), exact=True), exact=True)
    t_n, a_n = p.measures(n)
    return (t_n - value) / a_n


def _dyadic(value: Any) -> Fraction:
    man, exp = value.man_exp
    return Fraction(man) * Fraction(2) ** exp


def _represents_exactly(value: Real, x: RealLike) -> bool:
    """Whether the coerced ``value`` equals the input ``x``."""
    if isinstance(x, (int, float)):
        return True
    try:
        target = _dyadic(x) if is_mpf(x) else Fraction(x)
    except (TypeError, ValueError):
        return False
    return _dyadic(value) == target


def apply_map(p: Partition, x: RealLike) -> Real:
    """One application of the digit map.

    Returns 0 for x = 0, otherwise (t_n - x) / a_n for x in A_n.
    """
    value = p.coerce(x)
    if value < 0 or value > 1:
        raise DomainError(f"apply_map needs 0 <= x <= 1, got {x}")
    if value == 0:
        return p.zero()
    return _step(p, value, p.locate_atom(value))


def _run_orbit(
    p: Partition,
    x: Real,
    k_max: int,
    zero_tol: Real,
    budget: float,
    stop_when_untrusted: bool,
) -> _Orbit:
    orbit = _Orbit()
    value = x
    while len(orbit.digits) < k_max:
        if orbit.lost_bits > budget and stop_when_untrusted:
            orbit.exhausted = True
            break
        n = p.locate_atom(value)
        if orbit.lost_bits <= budget:
            orbit.trusted += 1
        orbit.digits.append(n)
        orbit.lost_bits += p.atom_bits(n)
        value = _step(p, value, n)
        if value <= zero_tol:
            orbit.terminated = True
            break
    return orbit


def _dyadic_orbit(p: Partition, x: Any, k_max: int, zero_tol: Real) -> _Orbit:
    """Classical orbit of x = m 2^-e in integer arithmetic.

    Every iterate keeps the denominator 2^e: l = floor(2^e / m) and the next
    numerator is (l + 1) 2^e - l(l + 1) m.
    """
    man, exp = x.man_exp
    scale = -exp
    unit = 1 << scale
    threshold = int(p.context.floor(p.context.ldexp(zero_tol, scale)))
    orbit = _Orbit()
    m = man
    while len(orbit.digits) < k_max:
        n = unit // m
        orbit.digits.append(n)
        m = (n + 1) * unit - n * (n + 1) * m
        if m <= threshold:
            orbit.terminated = True
            break
    orbit.trusted = len(orbit.digits)
    return orbit


def encode(
    p: Partition,
    x: RealLike,
    k_max: int | None = None,
    zero_tol: RealLike | None = None,
) -> DigitSequence:
    """Digits of x, read off the orbit of the digit map.

    Each digit l consumes about log2(1 / a_l) bits. When the working precision
    runs out before ``k_max`` digits, the orbit is recomputed at twice the
    precision, up to ``settings.max_precision``; the digits still produced past
    that point are reported as untrusted. Classical orbits of points the
    working precision represents exactly (every float) are computed exactly.

    Args:
        p: Partition.
        x: Point in (0, 1].
        k_max: Most digits to emit; defaults to and may not exceed ``settings.k_max``.
        zero_tol: Iterates at or below this are treated as 0. Defaults to
            2^(-precision/2); ignored in exact mode.

    Returns:
        DigitSequence with ``k_max`` digits, or fewer when the map reaches 0;
        canonical when terminated.
    """
    k_max = settings.k_max if k_max is None else k_max
    if not 1 <= k_max <= settings.k_max:
        raise DomainError(f"k_max must be in [1, {settings.k_max}], got {k_max}")
    value = p.coerce(x)
    if not 0 < value <= 1:
        raise DomainError(f"encode needs 0 < x <= 1, got {x}")

    if p.exact:
        orbit = _run_orbit(p, value, k_max, p.zero(), math.inf, False)
        return _finish(orbit)

    guard = p.precision // 2
    if p.kind == PartitionKind.CLASSICAL and _represents_exactly(value, x):
        tol = p.context.ldexp(1, -guard) if zero_tol is None else p.coerce(zero_tol)
        return _finish(_dyadic_orbit(p, value, k_max, tol))

    bits = p.precision
    while True:
        work = p.with_precision(bits)
        tol = work.context.ldexp(1, -guard) if zero_tol is None else work.coerce(zero_tol)
        can_raise = bits < settings.max_precision
        orbit = _run_orbit(work, work.coerce(x), k_max, tol, bits - guard, can_raise)
        if not orbit.exhausted:
            break
        bits = min(padded_bits(2 * bits), settings.max_precision)
        logger.debug("encode: raising precision to %d bits after %d digits", bits, orbit.trusted)

    if orbit.trusted < len(orbit.digits):
        logger.info(
            "encode: %d of %d digits trusted at %d bits", orbit.trusted, len(orbit.digits), bits
        )
    return _finish(orbit)


def _finish(orbit: _Orbit) -> DigitSequence:
    result = DigitSequence(
        digits=tuple(orbit.digits), terminated=orbit.terminated, trusted=orbit.trusted
    )
    return canonicalize(result) if result.terminated else result


def decode(p: Partition, d: DigitsLike) -> Real:
    """Evaluate t_l1 - a_l1 t_l2 + a_l1 a_l2 t_l3 - ... with running products.

    Classical digits are summed exactly and rounded once. Other partitions are
    summed at the working precision plus the bits lost to the atom products,
    then rounded back.
    """
    digits = as_digits(d)
    if not digits:
        raise DomainError("cannot decode an empty digit sequence")
    if p.kind == PartitionKind.CLASSICAL:
        num, den = _classical_series(digits)
        return Fraction(num, den) if p.exact else p.context.fdiv(num, den)
    lost = sum(p.atom_bits(n) for n in digits)
    work = p.with_precision(padded_bits(p.precision + math.ceil(lost) + GUARD_BITS))

    total = work.zero()
    product = work.one()
    sign = 1
    for n in digits:
        t_n, a_n = work.measures(n)
        total += sign * product * t_n
        product *= a_n
        sign = -sign
    return p.coerce(total)


def canonicalize(d: DigitsLike) -> DigitSequence:
    """Rewrite a trailing [..., l, 1] as [..., l + 1] until the last digit is >= 2.

    Truncated (non-terminated) sequences are returned unchanged.
    """
    if isinstance(d, DigitSequence) and not d.terminated:
        return d
    digits = list(as_digits(d))
    while len(digits) > 1 and digits[-1] == 1:
        digits.pop()
        digits[-1] += 1
    trusted = d.trusted if isinstance(d, DigitSequence) else None
    if trusted is not None:
        trusted = min(trusted, len(digits))
    return DigitSequence(digits=tuple(digits), terminated=True, trusted=trusted)


def _classical_series(digits: tuple[int, ...]) -> tuple[int, int]:
    """Exact classical value of ``digits`` as (numerator, denominator).

    Evaluated from the last digit: v = 1/l_k, then v <- ((l + 1) - v) / (l(l + 1)).
    """
    num, den = 1, digits[-1]
    for n in reversed(digits[:-1]):
        num, den = (n + 1) * den - num, n * (n + 1) * den
    return num, den
