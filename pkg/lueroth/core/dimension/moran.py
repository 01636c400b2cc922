"""Moran roots of cover sums and the theoretical dimensions they approach."""

import logging

from lueroth.config import settings
from lueroth.core.constraints import ConstraintModel, Jarnik
from lueroth.core.dimension.cover import cover_sum
from lueroth.core.dimension.models import CoverSum, DimensionEstimate, DimensionTarget
from lueroth.core.dimension.sigma import sigma_from_sequence
from lueroth.core.exceptions import DomainError, MonotonicityError, NoRootError
from lueroth.core.partition import Partition

logger = logging.getLogger(__name__)

DEFAULT_LEVEL = 12
SIGMA_HORIZON = 50


def theoretical_dimension(model: ConstraintModel, theta: float) -> DimensionTarget:
    """Dimension the model's Moran roots approach.

    Good sets, bands and envelopes tend to 1/(1+theta). Jarnik models use the
    closed form with the sequence's limiting tau when it is known and a
    finite-horizon sigma otherwise.
    """
    if theta < 0:
        raise DomainError(f"theta must be >= 0, got {theta}")
    if not isinstance(model, Jarnik):
        return DimensionTarget(value=1.0 / (1.0 + theta), source="1/(1+theta)")
    report = sigma_from_sequence(theta, model.sequence, horizon=SIGMA_HORIZON)
    if report.analytic_sigma is not None:
        return DimensionTarget(value=report.analytic_sigma, source="1/((1+theta)+theta*tau)")
    return DimensionTarget(
        value=report.sigma,
        approximate=True,
        source=f"sigma at horizon {SIGMA_HORIZON}",
    )


def moran_root(
    model: ConstraintModel,
    p: Partition,
    k: int | None = None,
    tol: float | None = None,
    tilde: bool | None = None,
) -> DimensionEstimate:
    """Solve cover_sum(model, p, k, s) = 1 for s by bisection.

    Args:
        model: Constraint model.
        p: Partition.
        k: Level; defaults to 1 for level-homogeneous models and DEFAULT_LEVEL
            otherwise.
        tol: Bracket width at which to stop; defaults to settings.tolerance.
        tilde: Use the tilde cover; defaults to True for Jarnik models.

    Returns:
        DimensionEstimate with the bracket midpoint as s*.

    Raises:
        NoRootError: The cover sum does not cross 1 on the search interval.
        MonotonicityError: The cover sum failed to decrease in s.
    """
    if k is None:
        k = 1 if model.level_homogeneous else DEFAULT_LEVEL
    if k < 1:
        raise DomainError(f"moran_root needs k >= 1, got {k}")
    tol = settings.tolerance if tol is None else tol
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if tilde is None:
        tilde = isinstance(model, Jarnik)

    def evaluate(s: float) -> CoverSum:
        return cover_sum(model, p, k, s, tilde=tilde)

    lo, hi = settings.bisection_lo, settings.bisection_hi
    at_lo, at_hi = evaluate(lo), evaluate(hi)
    if at_hi.log_value == 0.0:
        lo = hi
    elif not (at_lo.log_value > 0.0 > at_hi.log_value):
        raise NoRootError(
            f"cover sum of {model!r} at level {k} does not cross 1 on [{lo}, {hi}]",
            s_lo=lo,
            s_hi=hi,
            value_lo=at_lo.log_value,
            value_hi=at_hi.log_value,
        )

    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        at_mid = evaluate(mid)
        if not at_hi.log_value <= at_mid.log_value <= at_lo.log_value:
            raise MonotonicityError(
                f"cover sum is not decreasing near s={mid}: "
                f"{at_lo.log_value}, {at_mid.log_value}, {at_hi.log_value}"
            )
        if at_mid.log_value > 0.0:
            lo, at_lo = mid, at_mid
        else:
            hi, at_hi = mid, at_mid
        iterations += 1

    s_star = 0.5 * (lo + hi)
    diagnostics = evaluate(s_star)
    logger.info(
        "moran root %.12g for %r at level %d after %d steps", s_star, model, k, iterations
    )
    theory = theoretical_dimension(model, p.theta)
    return DimensionEstimate(
        s_star=s_star,
        bracket=(lo, hi),
        level=k,
        tilde=tilde,
        iterations=iterations,
        diagnostics=diagnostics,
        theory=theory,
    )
