"""Cylinder intervals, tilde-cylinders and the three-neighbour ball cover."""

import logging
import math
from enum import Enum
from fractions import Fraction
from itertools import pairwise
from typing import Any

from pydantic import BaseModel, ConfigDict

from lueroth.core.codec import DigitsLike, as_digits, decode
from lueroth.core.exceptions import DomainError, PreconditionError
from lueroth.core.partition import Partition, PartitionKind, Real, padded_bits
from lueroth.core.partition.partition import GUARD_BITS, RealLike

logger = logging.getLogger(__name__)


class Parity(str, Enum):
    ODD = "odd"
    EVEN = "even"


class Cylinder(BaseModel):
    """Closed interval of points whose expansion starts with ``digits``.

    The decoded prefix is the right endpoint for odd length and the left
    endpoint for even length.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    digits: tuple[int, ...]
    lo: Any
    hi: Any
    measure: Any

    @property
    def parity(self) -> Parity:
        return Parity.ODD if len(self.digits) % 2 else Parity.EVEN

    @property
    def anchor(self) -> Any:
        """Endpoint equal to the decoded prefix."""
        return self.hi if self.parity == Parity.ODD else self.lo

    def contains(self, x: Any) -> bool:
        return self.lo <= x <= self.hi


def _checked(d: DigitsLike) -> tuple[int, ...]:
    digits = as_digits(d)
    if not digits:
        raise DomainError("cylinders need a non-empty digit prefix")
    if min(digits) < 1:
        raise DomainError(f"digits must be >= 1, got {list(digits)}")
    return digits


def _bumped(digits: tuple[int, ...], offset: int = 1) -> tuple[int, ...]:
    return digits[:-1] + (digits[-1] + offset,)


def resolving(p: Partition, digits: tuple[int, ...]) -> Partition:
    """The partition at a precision that separates points of the cylinder of ``digits``."""
    if p.exact:
        return p
    lost = sum(p.atom_bits(n) for n in digits)
    return p.with_precision(padded_bits(p.precision + math.ceil(lost) + GUARD_BITS))


def cylinder_measure(p: Partition, d: DigitsLike, tilde_next: int | None = None) -> Real:
    """Lebesgue measure prod a_l of a cylinder.

    With ``tilde_next = s`` this is the measure prod a_l * t_s of the union of
    the children whose next digit is at least s.
    """
    digits = _checked(d)
    if tilde_next is not None and tilde_next < 1:
        raise DomainError(f"tilde_next must be >= 1, got {tilde_next}")
    if p.kind == PartitionKind.CLASSICAL:
        den = math.prod(n * (n + 1) for n in digits) * (tilde_next or 1)
        return Fraction(1, den) if p.exact else p.context.fdiv(1, den)
    measure = p.one()
    for n in digits:
        measure *= p.atom(n)
    if tilde_next is not None:
        measure *= p.tail(tilde_next)
    return measure


def log_cylinder_measure(p: Partition, d: DigitsLike) -> float:
    """Natural log of the cylinder measure, summed in float64."""
    digits = _checked(d)
    return math.fsum(p.log_atoms(list(digits)).tolist())


def cylinder_interval(p: Partition, d: DigitsLike) -> Cylinder:
    """Endpoints, orientation and measure of the cylinder of ``d``."""
    digits = _checked(d)
    work = resolving(p, digits)
    anchor = decode(work, digits)
    other = decode(work, _bumped(digits))
    lo, hi = (other, anchor) if len(digits) % 2 else (anchor, other)
    return Cylinder(digits=digits, lo=lo, hi=hi, measure=cylinder_measure(work, digits))


def numeric_slack(p: Partition) -> Real:
    """Error budget 2^-(precision - 10) for interval comparisons; 0 in exact mode."""
    if p.exact:
        return p.zero()
    return p.context.ldexp(1, -(p.precision - 10))


def ball_containment_check(p: Partition, d: DigitsLike, r: RealLike) -> bool:
    """Whether B(x, r) lies in the union of the three level-k neighbours.

    ``d`` holds k + 1 nondecreasing digits and x is its decoded value. The
    neighbours are the level-k cylinders whose last digit is l_k - 1, l_k or
    l_k + 1; a missing left neighbour (l_k = 1) is replaced by the parent
    boundary. The union is clipped to [0, 1].

    Raises:
        PreconditionError: r is outside [lambda(C_(k+1)), lambda(C_k)) or the
            digits decrease somewhere.
    """
    digits = _checked(d)
    if len(digits) < 2:
        raise DomainError("ball containment needs at least two digits")
    if any(b < a for a, b in pairwise(digits)):
        raise PreconditionError(f"digits must be nondecreasing, got {list(digits)}")

    radius = p.coerce(r)
    level = digits[:-1]
    inner = cylinder_measure(p, digits)
    if not inner * (1 - numeric_slack(p)) <= radius < cylinder_measure(p, level):
        raise PreconditionError(
            f"radius {p.format(radius, 6)} is outside the window of level {len(level)}"
        )

    work = resolving(p, digits)
    radius = work.coerce(radius)
    x = decode(work, digits)
    last = level[-1]
    left_edge = decode(work, level[:-1] + (max(last - 1, 1),))
    right_edge = decode(work, level[:-1] + (last + 2,))
    lo = max(min(left_edge, right_edge), work.zero())
    hi = min(max(left_edge, right_edge), work.one())

    slack = numeric_slack(work)
    inside = lo - slack <= x - radius and x + radius <= hi + slack
    logger.debug("ball check k=%d digits=%s -> %s", len(level), list(digits), inside)
    return bool(inside)
