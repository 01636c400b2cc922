"""Finite-horizon sigma and tau for Jarnik sequences."""

import logging

from lueroth.core.constraints.sequences import SequenceSpec
from lueroth.core.dimension.models import SigmaReport, SigmaRow
from lueroth.core.exceptions import DomainError, NumericFailure

logger = logging.getLogger(__name__)


def _quotients(
    theta: float, log_products: list[float], log_next: list[float]
) -> list[float | None]:
    out: list[float | None] = []
    for log_p, log_n in zip(log_products, log_next):
        if log_p <= 0.0:
            out.append(None)
        else:
            out.append(log_p / ((1.0 + theta) * log_p + theta * log_n))
    return out


def _tail_min(values: list[float | None], window: int) -> float | None:
    defined = [v for v in values[-window:] if v is not None]
    return min(defined) if defined else None


def sigma_from_sequence(
    theta: float,
    s_spec: SequenceSpec,
    horizon: int = 50,
    eps: float = 0.0,
    window: int = 1,
) -> SigmaReport:
    """Evaluate log(s_1...s_n) / ((1+theta) log(s_1...s_n) + theta log s_(n+1)).

    Args:
        theta: Partition exponent, >= 0.
        s_spec: Sequence s_n.
        horizon: Last index n evaluated, >= 2.
        eps: Offset for the theta +- eps variants.
        window: Number of trailing indices the reported sigma and tau are
            taken over.

    Returns:
        SigmaReport. With theta = 0 every quotient is exactly 1.
    """
    if theta < 0:
        raise DomainError(f"theta must be >= 0, got {theta}")
    if horizon < 2:
        raise DomainError(f"horizon must be >= 2, got {horizon}")
    if eps < 0:
        raise DomainError(f"eps must be >= 0, got {eps}")
    if not 1 <= window <= horizon:
        raise DomainError(f"window must lie in [1, {horizon}], got {window}")
    s_spec.check()

    log_products = [s_spec.log_product(n) for n in range(1, horizon + 1)]
    log_next = [s_spec.log_term(n + 1) for n in range(1, horizon + 1)]
    quotients = _quotients(theta, log_products, log_next)
    taus = [None if lp <= 0.0 else ln / lp for lp, ln in zip(log_products, log_next)]

    sigma = _tail_min(quotients, window)
    if sigma is None:
        raise NumericFailure(
            f"sigma is undefined for {s_spec.describe()}: log(s_1...s_n) = 0 "
            f"over the last {window} indices"
        )
    defined_taus = [t for t in taus[-window:] if t is not None]
    tau = max(defined_taus)
    running_min = min(q for q in quotients if q is not None)

    plus = _tail_min(_quotients(theta + eps, log_products, log_next), window)
    minus = _tail_min(_quotients(max(theta - eps, 0.0), log_products, log_next), window)

    analytic_tau = s_spec.analytic_tau
    analytic_sigma = None
    if analytic_tau is not None:
        analytic_sigma = 1.0 / ((1.0 + theta) + theta * analytic_tau)

    logger.debug(
        "sigma=%.12g tau=%.6g at horizon %d for %s", sigma, tau, horizon, s_spec.describe()
    )
    return SigmaReport(
        theta=theta,
        horizon=horizon,
        window=window,
        eps=eps,
        sigma=sigma,
        tau=tau,
        running_min=running_min,
        analytic_tau=analytic_tau,
        analytic_sigma=analytic_sigma,
        sigma_eps_plus=plus if plus is not None else sigma,
        sigma_eps_minus=minus if minus is not None else sigma,
        rows=[
            SigmaRow(n=n, log_product=lp, quotient=q, tau=t)
            for n, (lp, q, t) in enumerate(zip(log_products, quotients, taus), start=1)
        ],
    )
