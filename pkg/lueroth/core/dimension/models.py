"""Result models for cover sums, Moran roots and dimension targets."""

import math
from typing import Literal

from pydantic import BaseModel, Field


def _exp(log_value: float) -> float:
    if log_value > 709.0:
        return math.inf
    return math.exp(log_value)


class LevelFactor(BaseModel):
    """log of sum_{l in range(level)} a_l^s, with a certified lower bound."""

    level: int
    lo: int
    hi: int | None
    log_value: float
    log_lower: float
    divergent: bool = False
    method: Literal["direct", "integral", "mixed", "divergent"] = "direct"


class CoverSum(BaseModel):
    """Sum over admissible level-k cylinders of lambda(C)^s.

    ``log_value`` is an over-estimate and ``log_lower`` an under-estimate; they
    coincide when every level is summed directly.
    """

    s: float
    k: int
    tilde: bool = False
    log_value: float
    log_lower: float
    divergent: bool = False
    levels: list[LevelFactor] = Field(default_factory=list)

    @property
    def value(self) -> float:
        return _exp(self.log_value)

    @property
    def lower(self) -> float:
        return _exp(self.log_lower)


class DimensionTarget(BaseModel):
    """Theoretical dimension of a model."""

    value: float
    approximate: bool = False
    source: str


class DimensionEstimate(BaseModel):
    """Moran root s* of the level-k cover sum."""

    s_star: float
    bracket: tuple[float, float]
    level: int
    tilde: bool
    iterations: int
    diagnostics: CoverSum
    theory: DimensionTarget | None = None

    @property
    def gap(self) -> float | None:
        return None if self.theory is None else self.s_star - self.theory.value


class SigmaRow(BaseModel):
    n: int
    log_product: float
    quotient: float | None  # None where log(s_1 ... s_n) = 0
    tau: float | None


class SigmaReport(BaseModel):
    """Finite-horizon evaluation of the Jarnik dimension formula.

    ``sigma`` is the smallest quotient over the last ``window`` indices and
    ``running_min`` the smallest over the whole horizon. ``sigma_eps_plus`` and
    ``sigma_eps_minus`` repeat the computation with theta + eps and theta - eps.
    """

    theta: float
    horizon: int
    window: int
    eps: float
    sigma: float
    tau: float
    running_min: float
    analytic_tau: float | None = None
    analytic_sigma: float | None = None
    sigma_eps_plus: float
    sigma_eps_minus: float
    rows: list[SigmaRow]


class HolderProfile(BaseModel):
    """Ball-mass exponents log mu(B(x, r)) / log r with r = lambda(C_k(x))."""

    measure_kind: Literal["nu", "m"]
    n_samples: int
    depth: int
    estimate: float  # minimum over samples of the deepest-level exponent
    level_minima: dict[int, float]


class EpsilonDiagnostic(BaseModel):
    """Least eps in (0, 1) with -eps / log(eps) > 1 / log N."""

    n: int
    epsilon: float
    contraction: float  # 1 / (eps N^eps)
    contracts: bool
