"""Contraction diagnostic for GoodSet upper bounds."""

import math

from lueroth.core.dimension.models import EpsilonDiagnostic
from lueroth.core.exceptions import DomainError

EPS_TOL = 1e-12


def _margin(eps: float, log_n: float) -> float:
    # positive exactly when eps N^eps > 1
    return eps * log_n + math.log(eps)


def epsilon_n_diagnostic(n: int) -> EpsilonDiagnostic:
    """Least eps in (0, 1) with -eps / log(eps) > 1 / log N.

    The level-k cover of GoodSet(N) at exponent 1/(1+theta) + eps shrinks like
    (1 / (eps N^eps))^k, so it contracts once eps exceeds this threshold.
    """
    if n < 2:
        raise DomainError(f"the diagnostic needs N >= 2, got {n}")
    log_n = math.log(n)
    lo, hi = EPS_TOL, 1.0 - EPS_TOL
    if _margin(lo, log_n) > 0:
        hi = lo
    # the margin increases in eps on (0, 1)
    while hi - lo > EPS_TOL:
        mid = 0.5 * (lo + hi)
        if _margin(mid, log_n) > 0:
            hi = mid
        else:
            lo = mid
    contraction = 1.0 / (hi * math.exp(hi * log_n))
    return EpsilonDiagnostic(n=n, epsilon=hi, contraction=contraction, contracts=contraction < 1.0)
