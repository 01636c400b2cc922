"""Digit sequences."""

from collections.abc import Sequence
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field

Digit = Annotated[int, Field(ge=1)]


class DigitSequence(BaseModel):
    """Finite or truncated digit string (l_1, ..., l_k).

    ``terminated`` is set when the map hit zero, so the expansion is finite.
    ``trusted`` counts the leading digits backed by the working precision.
    """

    model_config = ConfigDict(frozen=True)

    digits: tuple[Digit, ...]
    terminated: bool = False
    trusted: int | None = None

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def is_canonical(self) -> bool:
        """Finite expansions end in a digit >= 2; the single digit [1] is allowed."""
        return len(self.digits) <= 1 or self.digits[-1] >= 2

    @classmethod
    def finite(cls, digits: Sequence[int]) -> "DigitSequence":
        return cls(digits=tuple(digits), terminated=True, trusted=len(digits))

    @classmethod
    def parse(cls, text: str, terminated: bool = True) -> "DigitSequence":
        """Parse a comma-separated digit list such as ``"2,2"``."""
        digits = tuple(int(part) for part in text.split(",") if part.strip())
        return cls(digits=digits, terminated=terminated)


DigitsLike = DigitSequence | Sequence[int]


def as_digits(value: DigitsLike) -> tuple[int, ...]:
    if isinstance(value, DigitSequence):
        return value.digits
    return tuple(int(d) for d in value)
