"""Harmonic band sums and the least band end with sum > 1."""

import logging
from functools import lru_cache
from typing import Any

from lueroth.config import settings
from lueroth.core.exceptions import SpecError
from lueroth.core.partition import working_context

logger = logging.getLogger(__name__)

HARMONIC_BITS = 128


@lru_cache(maxsize=4096)
def harmonic_sum(lo: int, hi: int) -> float:
    """sum_{i=lo}^{hi} 1/i."""
    return float(_harmonic_gap(lo, hi))


def _harmonic_gap(lo: int, hi: int) -> Any:
    ctx = working_context(HARMONIC_BITS)
    if hi < lo:
        return ctx.zero
    if hi - lo < 64:
        return ctx.fsum(ctx.fdiv(1, i) for i in range(lo, hi + 1))
    return ctx.harmonic(hi) - ctx.harmonic(lo - 1)


def exceeds_one(lo: int, hi: int) -> bool:
    return bool(_harmonic_gap(lo, hi) > 1)


@lru_cache(maxsize=4096)
def minimal_band_end(start: int) -> int:
    """Least M with sum_{i=start}^{M} 1/i > 1.

    Raises:
        SpecError: M would exceed ``settings.band_search_limit``.
    """
    if start < 1:
        raise SpecError(f"band start must be >= 1, got {start}")
    limit = settings.band_search_limit
    lo, hi = start, 2 * start
    while not exceeds_one(start, hi):
        lo, hi = hi, 2 * hi
        if lo > limit:
            raise SpecError(f"minimal band end for N={start} exceeds the search limit {limit}")
    # exceeds_one(start, lo) is false
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if exceeds_one(start, mid):
            hi = mid
        else:
            lo = mid
    if hi > limit:
        raise SpecError(f"minimal band end for N={start} exceeds the search limit {limit}")
    logger.debug("minimal band end for N=%d is M=%d", start, hi)
    return hi
