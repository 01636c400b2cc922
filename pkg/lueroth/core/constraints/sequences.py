"""Integer sequences s_n that position Jarnik-type digit windows."""

import logging
import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from pydantic import BaseModel, ConfigDict

from lueroth.core.exceptions import DomainError, SpecError

logger = logging.getLogger(__name__)


class SequenceKind(str, Enum):
    GEOMETRIC = "geometric"
    DOUBLY_EXPONENTIAL = "doubly-exponential"
    POLYNOMIAL_FACTORIAL = "polynomial-factorial"
    CUSTOM = "custom"


@lru_cache(maxsize=None)
def _warn_extension(values: tuple[int, ...]) -> None:
    logger.warning(
        "custom sequence of length %d extended past its end by repeating the last ratio",
        len(values),
    )


class SequenceSpec(BaseModel):
    """A sequence of natural numbers s_1, s_2, ...

    Kinds:
        geometric: s_n = base^n
        doubly-exponential: s_n = base^(2^n)
        polynomial-factorial: s_n = n + c
        custom: explicit ``values``; later terms repeat the last ratio.
    """

    model_config = ConfigDict(frozen=True)

    kind: SequenceKind = SequenceKind.GEOMETRIC
    base: int = 2
    c: int = 0
    values: tuple[int, ...] | None = None

    def check(self) -> None:
        """Raise SpecError unless the sequence is well defined."""
        if self.kind in (SequenceKind.GEOMETRIC, SequenceKind.DOUBLY_EXPONENTIAL):
            if self.base < 2:
                raise SpecError(f"{self.kind.value} sequences need base >= 2, got {self.base}")
        elif self.kind == SequenceKind.POLYNOMIAL_FACTORIAL:
            if self.c < 0:
                raise SpecError(f"polynomial-factorial sequences need c >= 0, got {self.c}")
        else:
            if not self.values:
                raise SpecError("custom sequences need a non-empty list of values")
            if min(self.values) < 1:
                raise SpecError("sequence terms must be natural numbers")

    @property
    def _ratio(self) -> Fraction:
        values = self.values or (1,)
        return Fraction(values[-1], values[-2]) if len(values) > 1 else Fraction(1)

    def term(self, n: int) -> int:
        """s_n for n >= 1."""
        if n < 1:
            raise DomainError(f"sequence index must be >= 1, got {n}")
        if self.kind == SequenceKind.GEOMETRIC:
            return self.base**n
        if self.kind == SequenceKind.DOUBLY_EXPONENTIAL:
            return self.base ** (2**n)
        if self.kind == SequenceKind.POLYNOMIAL_FACTORIAL:
            return n + self.c
        values = self.values or (1,)
        if n <= len(values):
            return values[n - 1]
        _warn_extension(values)
        return max(1, math.floor(values[-1] * self._ratio ** (n - len(values))))

    def log_term(self, n: int) -> float:
        """log s_n without forming s_n when it is huge."""
        if self.kind == SequenceKind.GEOMETRIC:
            return n * math.log(self.base)
        if self.kind == SequenceKind.DOUBLY_EXPONENTIAL:
            return math.ldexp(math.log(self.base), n)
        return math.log(self.term(n))

    def log_product(self, n: int) -> float:
        """log(s_1 ... s_n)."""
        if self.kind == SequenceKind.GEOMETRIC:
            return n * (n + 1) / 2 * math.log(self.base)
        if self.kind == SequenceKind.DOUBLY_EXPONENTIAL:
            return (math.ldexp(1.0, n + 1) - 2) * math.log(self.base)
        if self.kind == SequenceKind.POLYNOMIAL_FACTORIAL:
            return math.lgamma(n + self.c + 1) - math.lgamma(self.c + 1)
        return math.fsum(self.log_term(i) for i in range(1, n + 1))

    @property
    def analytic_tau(self) -> float | None:
        """lim sup of log s_(n+1) / log(s_1 ... s_n) where it is known in closed form."""
        return {
            SequenceKind.GEOMETRIC: 0.0,
            SequenceKind.DOUBLY_EXPONENTIAL: 1.0,
            SequenceKind.POLYNOMIAL_FACTORIAL: 0.0,
        }.get(self.kind)

    @property
    def diverges(self) -> bool:
        if self.kind != SequenceKind.CUSTOM:
            return True
        return self._ratio > 1

    def describe(self) -> str:
        if self.kind == SequenceKind.GEOMETRIC:
            return f"{self.base}^n"
        if self.kind == SequenceKind.DOUBLY_EXPONENTIAL:
            return f"{self.base}^(2^n)"
        if self.kind == SequenceKind.POLYNOMIAL_FACTORIAL:
            return f"n+{self.c}"
        return f"custom{list(self.values or ())}"
