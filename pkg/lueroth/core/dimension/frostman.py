"""Mass distributions on constraint models and their empirical Holder exponents."""

import logging
import math
from typing import Any, Literal

import numpy as np

from lueroth.core.codec import DigitsLike, as_digits
from lueroth.core.constraints import ConstraintModel, Envelope, GoodBand, Jarnik
from lueroth.core.cylinder import log_cylinder_measure, resolving
from lueroth.core.dimension.models import HolderProfile
from lueroth.core.exceptions import DomainError
from lueroth.core.partition import Partition

logger = logging.getLogger(__name__)

MeasureKind = Literal["nu", "m"]

SIBLING_LIMIT = 64


def _measure_kind(model: ConstraintModel) -> MeasureKind:
    if isinstance(model, (GoodBand, Envelope)):
        return "nu"
    if isinstance(model, Jarnik):
        return "m"
    raise DomainError(f"no mass distribution is defined on {model!r}")


def log_digit_weight(model: ConstraintModel, level: int, digit: int) -> float:
    """log of the mass ratio mu(C(..., digit)) / mu(C(...)) at ``level``.

    nu gives digit l at level n the weight 1/(S_n l), with S_n the harmonic sum
    of the level range; m gives it 1/l.
    """
    if isinstance(model, GoodBand):
        return -math.log(model.band_sum) - math.log(digit)
    if isinstance(model, Envelope):
        return -math.log(model.level_sum(level)) - math.log(digit)
    if isinstance(model, Jarnik):
        return -math.log(digit)
    raise DomainError(f"no mass distribution is defined on {model!r}")


def log_frostman_measure(model: ConstraintModel, digits: DigitsLike) -> float:
    """log of the mass of the cylinder of ``digits``."""
    d = as_digits(digits)
    if not model.contains(d):
        raise DomainError(f"{list(d)} is not an admissible prefix of {model!r}")
    return math.fsum(log_digit_weight(model, level, n) for level, n in enumerate(d, start=1))


def frostman_measure(model: ConstraintModel, digits: DigitsLike) -> float:
    """Mass of the cylinder of ``digits``.

    GoodBand: 1/(S^k prod l_i). Envelope: 1/(prod S_i prod l_i). Jarnik: 1/prod l_i.

    Raises:
        DomainError: The model carries no mass distribution or the prefix is
            not admissible.
    """
    return math.exp(log_frostman_measure(model, digits))


def _ball_exponents(
    model: ConstraintModel, p: Partition, digits: tuple[int, ...], depth: int
) -> dict[int, float]:
    """log mu(B(x, lambda(C_k))) / log lambda(C_k) for k = 2..depth.

    x is the point with digits ``digits``. Ball masses add the level-k siblings
    of C_k(x) that meet the ball, walking outward from l_k.
    """
    work = resolving(p, digits)
    bases: list[Any] = []  # value of the prefix before each level
    products: list[Any] = []  # lambda of the parent cylinder at each level
    signs: list[int] = []
    total, product, sign = work.zero(), work.one(), 1
    for n in digits:
        bases.append(total)
        products.append(product)
        signs.append(sign)
        total += sign * product * work.tail(n)
        product *= work.atom(n)
        sign = -sign
    x = total

    exponents: dict[int, float] = {}
    log_parent = 0.0
    for k in range(1, depth + 1):
        index = k - 1
        digit = digits[index]
        if k >= 2:
            radius = products[k]  # lambda(C_k)
            base, parent, sgn = bases[index], products[index], signs[index]

            def meets(m: int) -> bool:
                ends = (base + sgn * parent * work.tail(m), base + sgn * parent * work.tail(m + 1))
                return min(ends) <= x + radius and max(ends) >= x - radius

            lo, hi = model.admissible_range(k)
            if model.monotone_coupling:
                lo = max(lo, digits[index - 1])
            weights = [log_digit_weight(model, k, digit)]
            for step in (-1, 1):
                m = digit + step
                while (
                    m >= max(lo, 1)
                    and (hi is None or m <= hi)
                    and abs(m - digit) <= SIBLING_LIMIT
                    and meets(m)
                ):
                    weights.append(log_digit_weight(model, k, m))
                    m += step
            log_mass = log_parent + float(np.logaddexp.reduce(weights))
            log_radius = log_cylinder_measure(p, digits[:k])
            exponents[k] = log_mass / log_radius + 0.0
        log_parent += log_digit_weight(model, k, digit)
    return exponents


def holder_profile(
    model: ConstraintModel,
    p: Partition,
    measure_kind: MeasureKind | None = None,
    n_samples: int = 1000,
    depth: int = 12,
    seed: int | None = 0,
) -> HolderProfile:
    """Minimum over sampled points of the ball-mass exponent at each level 2..depth."""
    kind = _measure_kind(model)
    if measure_kind is not None and measure_kind != kind:
        raise DomainError(f"measure {measure_kind!r} is not defined on {model!r}; use {kind!r}")
    if depth < 2:
        raise DomainError(f"depth must be >= 2, got {depth}")
    if n_samples < 1:
        raise DomainError(f"n_samples must be >= 1, got {n_samples}")

    seeds = np.random.default_rng(seed).integers(2**63 - 1, size=n_samples)
    level_minima: dict[int, float] = {}
    deepest: list[float] = []
    for sample_seed in seeds:
        digits = model.sample_digits(depth + 2, int(sample_seed)).digits
        exponents = _ball_exponents(model, p, digits, depth)
        for level, value in exponents.items():
            level_minima[level] = min(level_minima.get(level, math.inf), value)
        deepest.append(exponents[depth])

    estimate = min(deepest)
    logger.info(
        "holder exponent %.6g for %r over %d samples at depth %d", estimate, model, n_samples, depth
    )
    return HolderProfile(
        measure_kind=kind,
        n_samples=n_samples,
        depth=depth,
        estimate=estimate,
        level_minima=level_minima,
    )


def empirical_holder(
    model: ConstraintModel,
    p: Partition,
    measure_kind: MeasureKind | None = None,
    n_samples: int = 1000,
    depth: int = 12,
    seed: int | None = 0,
) -> float:
    """Finite-sample lower estimate of the local dimension of the model's mass.

    For each sampled x, r runs over lambda(C_k(x)) and the exponent
    log mu(B(x, r)) / log r is taken at the deepest level; the result is the
    minimum over samples.
    """
    return holder_profile(model, p, measure_kind, n_samples, depth, seed).estimate
