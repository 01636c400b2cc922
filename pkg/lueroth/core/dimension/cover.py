"""Cover sums sum_{C admissible at level k} lambda(C)^s in log space.

Each level contributes a factor sum_{l in range(level)} a_l^s. Ranges up to
``settings.direct_sum_limit`` are summed term by term; longer and unbounded
ranges are summed directly up to a cutoff and bracketed by integrals of the
continuous atom function beyond it.
"""

import logging
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Any

import numpy as np
from mpmath.ctx_mp import MPContext

from lueroth.config import settings
from lueroth.core.constraints import ConstraintModel
from lueroth.core.dimension.models import CoverSum, LevelFactor
from lueroth.core.exceptions import DomainError
from lueroth.core.partition import Partition

logger = logging.getLogger(__name__)

CHUNK = 1 << 20
FLOAT_EXACT = 2**53
QUAD_BITS = 64

# mpmath quad raises the working precision of its context while it runs.
_local = threading.local()


def _quad_context() -> MPContext:
    ctx = getattr(_local, "ctx", None)
    if ctx is None:
        ctx = MPContext()
        ctx.prec = QUAD_BITS
        _local.ctx = ctx
    return ctx


def logsumexp(values: np.ndarray) -> float:
    """log sum exp(values) with a compensated sum."""
    if values.size == 0:
        return -math.inf
    top = float(np.max(values))
    if math.isinf(top):
        return top
    return top + math.log(math.fsum(np.exp(values - top)))


def _logaddexp(a: float, b: float) -> float:
    return float(np.logaddexp(a, b))


@lru_cache(maxsize=32)
def _chunk_log_atoms(p: Partition, start: int, stop: int) -> np.ndarray:
    values = p.log_atoms(np.arange(start, stop + 1, dtype=np.float64))
    values.setflags(write=False)
    return values


def direct_log_sum(p: Partition, lo: int, hi: int, s: float) -> float:
    """log sum_{l=lo}^{hi} a_l^s, term by term."""
    parts = [
        logsumexp(s * _chunk_log_atoms(p, start, min(start + CHUNK - 1, hi)))
        for start in range(lo, hi + 1, CHUNK)
    ]
    return logsumexp(np.asarray(parts))


def log_integral(p: Partition, s: float, a: int, b: int | None) -> float:
    """log of the integral of a(x)^s over [a, b], b = None meaning infinity.

    Integrated in u = log x, where the integrand is exp(s log a(e^u) + u).
    """
    ctx = _quad_context()

    def integrand(u: Any) -> Any:
        return ctx.exp(s * p.log_atom_continuous(ctx.exp(u), ctx) + u)

    start = ctx.log(a)
    if b is None:
        points = [start, start + 1, start + 16, ctx.inf]
    else:
        points = [start, ctx.log(b)]
    value = ctx.quad(integrand, points)
    if value <= 0:
        return -math.inf
    return float(ctx.log(value))


def _direct_end(p: Partition, lo: int, hi: int | None) -> int:
    """Last index summed term by term; ``lo - 1`` when nothing is."""
    if hi is None:
        end = max(settings.cover_cutoff_min, settings.cover_cutoff_factor * lo)
    else:
        end = min(hi, lo + settings.cover_cutoff_min - 1)
    end = max(end, p.eventually_decreasing_from)
    if end >= FLOAT_EXACT:
        return lo - 1
    return end


def level_factor(p: Partition, model: ConstraintModel, level: int, s: float) -> LevelFactor:
    """log sum_{l in range(level)} a_l^s with certified bounds."""
    lo, hi = model.admissible_range(level)
    if hi is not None and hi - lo < settings.direct_sum_limit and hi < FLOAT_EXACT:
        value = direct_log_sum(p, lo, hi, s)
        return LevelFactor(level=level, lo=lo, hi=hi, log_value=value, log_lower=value)

    if hi is None and p.tail_decay().power_sum_diverges(s):
        return LevelFactor(
            level=level,
            lo=lo,
            hi=hi,
            log_value=math.inf,
            log_lower=math.inf,
            divergent=True,
            method="divergent",
        )

    end = _direct_end(p, lo, hi)
    if hi is not None and end >= hi:
        value = direct_log_sum(p, lo, hi, s)
        return LevelFactor(level=level, lo=lo, hi=hi, log_value=value, log_lower=value)
    head = direct_log_sum(p, lo, end, s) if end >= lo else -math.inf
    # a(x)^s decreases past ``end``: sum_{A}^{B} lies between the integrals
    # over [A, B + 1] and [A - 1, B].
    upper = log_integral(p, s, end, hi)
    lower = log_integral(p, s, end + 1, None if hi is None else hi + 1)
    logger.debug(
        "level %d: direct [%d, %d], tail in [%.6g, %.6g]", level, lo, end, lower, upper
    )
    return LevelFactor(
        level=level,
        lo=lo,
        hi=hi,
        log_value=_logaddexp(head, upper),
        log_lower=_logaddexp(head, lower),
        method="mixed" if end >= lo else "integral",
    )


def log_tail(p: Partition, n: int) -> float:
    if p.exact:
        return -math.log(n)
    return float(p.context.log(p.tail(n)))


def cover_sum(
    model: ConstraintModel, p: Partition, k: int, s: float, tilde: bool = False
) -> CoverSum:
    """Sum of lambda(C)^s over the admissible level-k cylinders.

    Args:
        model: Constraint model.
        p: Partition.
        k: Level, k >= 1.
        s: Exponent in (0, 1].
        tilde: Multiply by t_(l_min(k+1))^s, the tail of the least admissible
            digit one level deeper.

    Returns:
        CoverSum with an upper estimate ``log_value`` and lower estimate
        ``log_lower``. Divergent levels make the whole sum divergent.
    """
    if not 0 < s <= 1:
        raise DomainError(f"cover sums need 0 < s <= 1, got {s}")
    if k < 1:
        raise DomainError(f"cover sums need k >= 1, got {k}")

    if model.level_homogeneous:
        factor = level_factor(p, model, 1, s)
        factors = [factor]
        log_value = k * factor.log_value
        log_lower = k * factor.log_lower
    else:
        levels = range(1, k + 1)
        if k > 1 and settings.max_workers > 1:
            with ThreadPoolExecutor(max_workers=settings.max_workers) as pool:
                factors = list(pool.map(lambda lvl: level_factor(p, model, lvl, s), levels))
        else:
            factors = [level_factor(p, model, lvl, s) for lvl in levels]
        divergent = any(f.divergent for f in factors)
        log_value = math.inf if divergent else math.fsum(f.log_value for f in factors)
        log_lower = math.inf if divergent else math.fsum(f.log_lower for f in factors)

    divergent = any(f.divergent for f in factors)
    if tilde and not divergent:
        correction = s * log_tail(p, model.tilde_next(k))
        log_value += correction
        log_lower += correction

    return CoverSum(
        s=s,
        k=k,
        tilde=tilde,
        log_value=log_value,
        log_lower=log_lower,
        divergent=divergent,
        levels=factors,
    )
