"""Serializable constraint-model specifications.

Examples:
    {"kind": "goodset", "N": 10000}
    {"kind": "goodband", "N": 100, "M": "minimal"}
    {"kind": "envelope", "f": {"kind": "log2"}, "eps": 0.1}
    {"kind": "jarnik", "s": {"kind": "geometric", "base": 2}, "N": 4}
"""

from enum import Enum
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from lueroth.core.constraints.sequences import SequenceSpec


class ModelKind(str, Enum):
    GOODSET = "goodset"
    GOODBAND = "goodband"
    ENVELOPE = "envelope"
    JARNIK = "jarnik"


class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)


class GoodSetSpec(_Spec):
    """Digits exceed N at every level from ``n0`` on; earlier levels are free."""

    kind: Literal["goodset"] = "goodset"
    n: int = Field(alias="N")
    n0: int = 1
    cap: int | None = Field(default=None, description="Largest digit drawn when sampling")


class GoodBandSpec(_Spec):
    """Digits in {N, ..., M}; M = "minimal" picks the least M with sum 1/i > 1."""

    kind: Literal["goodband"] = "goodband"
    n: int = Field(alias="N")
    m: int | Literal["minimal"] = Field(default="minimal", alias="M")


class EnvelopeFunction(_Spec):
    """Lower window edge f(n).

    Kinds:
        log2: f(n) = c + floor(log2(n + 1)); c is chosen per partition when omitted.
        list: explicit nondecreasing values, continued with log2 growth.
        constant: f(n) = c; bounded, for experiments only.
    """

    kind: Literal["log2", "list", "constant"] = "log2"
    c: int | None = None
    values: tuple[int, ...] | None = None


class EnvelopeSpec(_Spec):
    """Nondecreasing digits in windows {f(n), ..., g(n)}."""

    kind: Literal["envelope"] = "envelope"
    f: EnvelopeFunction = EnvelopeFunction()
    eps: float = 0.1


class JarnikSpec(_Spec):
    """Digits in {s_n, ..., N s_n - 1}."""

    kind: Literal["jarnik"] = "jarnik"
    s: SequenceSpec = SequenceSpec()
    n_factor: int = Field(default=4, alias="N")


ModelSpec = Annotated[
    Union[GoodSetSpec, GoodBandSpec, EnvelopeSpec, JarnikSpec],
    Field(discriminator="kind"),
]

model_spec_adapter: TypeAdapter[ModelSpec] = TypeAdapter(ModelSpec)
