"""Exception hierarchy shared by the library and the CLI."""

import math
from typing import Any


def finite_or_none(value: Any) -> Any:
    """Replace non-finite floats with None, recursing into lists and dicts."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {key: finite_or_none(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [finite_or_none(item) for item in value]
    return value


class LuerothError(Exception):
    """Base class for every error raised by this package."""

    def to_dict(self) -> dict[str, Any]:
        """Error object written to standard error by the CLI."""
        return {"error": type(self).__name__, "message": str(self)}


class DomainError(LuerothError, ValueError):
    """Argument outside the domain of an operation."""


class PreconditionError(LuerothError, ValueError):
    """A documented precondition of an operation does not hold."""


class SpecError(LuerothError, ValueError):
    """Invalid partition, constraint-model or sequence specification."""


class NumericFailure(LuerothError, RuntimeError):
    """A numerical procedure could not produce a result."""


class NoRootError(NumericFailure):
    """The Moran equation has no sign change on the search bracket."""

    def __init__(self, message: str, s_lo: float, s_hi: float, value_lo: float, value_hi: float):
        super().__init__(message)
        self.s_lo = s_lo
        self.s_hi = s_hi
        self.value_lo = value_lo
        self.value_hi = value_hi

    def to_dict(self) -> dict[str, Any]:
        payload = super().to_dict()
        payload["endpoints"] = finite_or_none(
            {
                "s_lo": self.s_lo,
                "s_hi": self.s_hi,
                "log_sum_lo": self.value_lo,
                "log_sum_hi": self.value_hi,
            }
        )
        return payload


class DivergentSumError(NumericFailure):
    """A cover sum diverges at the requested exponent.

    ``cover`` holds the summary of the divergent sum; infinite values are
    written as null.
    """

    def __init__(self, message: str, cover: dict[str, Any] | None = None):
        super().__init__(message)
        self.cover = cover or {}

    def to_dict(self) -> dict[str, Any]:
        payload = super().to_dict()
        payload["cover"] = finite_or_none(self.cover)
        return payload


class SamplingError(NumericFailure):
    """No admissible digit exists at some level."""


class MonotonicityError(NumericFailure):
    """A cover sum failed to decrease in the exponent."""


class VerificationFailed(NumericFailure):
    """A property suite reported failures."""

    def __init__(self, message: str, errors: list[str], details: dict[str, Any] | None = None):
        super().__init__(message)
        self.errors = errors
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        payload = super().to_dict()
        payload["failures"] = self.errors[:20]
        payload["failure_count"] = len(self.errors)
        payload["suite"] = finite_or_none(self.details)
        return payload
