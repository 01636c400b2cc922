"""Dimension laboratory: cover sums, Moran roots, sigma and mass distributions."""

from lueroth.core.dimension.cover import cover_sum, level_factor
from lueroth.core.dimension.diagnostics import epsilon_n_diagnostic
from lueroth.core.dimension.frostman import (
    empirical_holder,
    frostman_measure,
    holder_profile,
    log_frostman_measure,
)
from lueroth.core.dimension.models import (
    CoverSum,
    DimensionEstimate,
    DimensionTarget,
    EpsilonDiagnostic,
    HolderProfile,
    LevelFactor,
    SigmaReport,
    SigmaRow,
)
from lueroth.core.dimension.moran import moran_root, theoretical_dimension
from lueroth.core.dimension.sigma import sigma_from_sequence

__all__ = [
    "CoverSum",
    "DimensionEstimate",
    "DimensionTarget",
    "EpsilonDiagnostic",
    "HolderProfile",
    "LevelFactor",
    "SigmaReport",
    "SigmaRow",
    "cover_sum",
    "empirical_holder",
    "epsilon_n_diagnostic",
    "frostman_measure",
    "holder_profile",
    "level_factor",
    "log_frostman_measure",
    "moran_root",
    "sigma_from_sequence",
    "theoretical_dimension",
]
