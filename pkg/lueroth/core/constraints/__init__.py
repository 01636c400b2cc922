"""Digit-constraint models."""

from lueroth.core.constraints.harmonic import harmonic_sum, minimal_band_end
from lueroth.core.constraints.models import (
    ConstraintModel,
    DigitRange,
    Envelope,
    GoodBand,
    GoodSet,
    Jarnik,
    admissible_range,
    choose_envelope_offset,
    contains,
    make_model,
    model_from_json,
    sample_digits,
    uniform_integer,
)
from lueroth.core.constraints.sequences import SequenceKind, SequenceSpec
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

__all__ = [
    "ConstraintModel",
    "DigitRange",
    "Envelope",
    "EnvelopeFunction",
    "EnvelopeSpec",
    "GoodBand",
    "GoodBandSpec",
    "GoodSet",
    "GoodSetSpec",
    "Jarnik",
    "JarnikSpec",
    "ModelKind",
    "ModelSpec",
    "SequenceKind",
    "SequenceSpec",
    "admissible_range",
    "choose_envelope_offset",
    "contains",
    "harmonic_sum",
    "make_model",
    "minimal_band_end",
    "model_from_json",
    "model_spec_adapter",
    "sample_digits",
    "uniform_integer",
]
