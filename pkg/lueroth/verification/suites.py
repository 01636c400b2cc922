"""Seeded property suites over the codec, cylinder geometry and dimension tools."""

import logging
import math
import time
from collections.abc import Callable
from fractions import Fraction
from typing import Any

import numpy as np
from pydantic import BaseModel, Field

from lueroth.core.codec import apply_map, decode, encode
from lueroth.core.constraints import SequenceKind, SequenceSpec, make_model
from lueroth.core.cylinder import ball_containment_check, cylinder_measure
from lueroth.core.dimension import (
    cover_sum,
    empirical_holder,
    moran_root,
    sigma_from_sequence,
)
from lueroth.core.dimension.frostman import log_digit_weight
from lueroth.core.exceptions import DomainError, VerificationFailed
from lueroth.core.partition import Partition, PartitionSpec, make_partition

logger = logging.getLogger(__name__)

SUITE_NAMES = ("roundtrip", "shift", "lemma-int", "frostman", "jarnik-bracket")


class SuiteResult(BaseModel):
    """Outcome of a property suite."""

    suite: str
    seed: int
    passed: bool
    checked: int = 0
    errors: list[str] = Field(default_factory=list)
    warnings: list[str] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)
    elapsed: float = 0.0


def _uniform_points(seed: int, count: int) -> np.ndarray:
    # (0, 1]
    return 1.0 - np.random.default_rng(seed).random(count)


class PropertySuites:
    """Property checks with a shared partition.

    Args:
        partition: Partition under test; the classical partition by default.
    """

    def __init__(self, partition: Partition | None = None):
        self.partition = partition or make_partition(PartitionSpec.classical())

    def roundtrip(self, seed: int, samples: int = 10_000, depth: int = 30) -> SuiteResult:
        """|decode(encode(x, depth)) - x| stays within the cylinder length and 1e-6."""
        p = self.partition
        errors: list[str] = []
        worst = 0.0
        for x in _uniform_points(seed, samples):
            digits = encode(p, float(x), depth)
            error = abs(decode(p, digits) - p.coerce(float(x)))
            bound = cylinder_measure(p, digits)
            worst = max(worst, p.to_float(error))
            if error > bound or error > 1e-6:
                errors.append(f"x={x!r}: error {p.format(error, 6)} exceeds {p.format(bound, 6)}")
        return SuiteResult(
            suite="roundtrip",
            seed=seed,
            passed=not errors,
            checked=samples,
            errors=errors,
            details={"depth": depth, "worst_error": worst},
        )

    def shift(self, seed: int, samples: int = 1_000, depth: int = 20) -> SuiteResult:
        """encode(T x, depth - 1) equals encode(x, depth) with its first digit dropped."""
        p = self.partition
        errors: list[str] = []
        skipped = 0
        for x in _uniform_points(seed, samples):
            image = apply_map(p, float(x))
            if image == 0:
                skipped += 1
                continue
            full = encode(p, float(x), depth).digits
            shifted = encode(p, image, depth - 1).digits
            if shifted != full[1:]:
                errors.append(f"x={x!r}: {list(shifted)} != {list(full[1:])}")
        return SuiteResult(
            suite="shift",
            seed=seed,
            passed=not errors,
            checked=samples - skipped,
            errors=errors,
            details={"depth": depth, "skipped": skipped},
        )

    def lemma_int(self, seed: int, samples: int = 500, top: int = 15) -> SuiteResult:
        """Balls around monotone Envelope points, across the radius window of each level.

        For level k the radii are lambda(C_(k+1)), the midpoint of the window and
        lambda(C_k)(1 - 2^-30). Each string needs some k_0 <= ``top`` with the
        containment holding for every radius and every k in [k_0, top]; earlier
        failures are reported as warnings.
        """
        p = self.partition
        model = make_model({"kind": "envelope"}, partition=p)
        shrink = p.coerce(Fraction(2**30 - 1, 2**30))
        errors: list[str] = []
        warnings: list[str] = []
        k0_values: list[int] = []
        rng = np.random.default_rng(seed)
        for string_seed in rng.integers(2**63 - 1, size=samples):
            digits = model.sample_digits(top + 1, int(string_seed)).digits
            outcomes: dict[int, bool] = {}
            for k in range(1, top + 1):
                inner = cylinder_measure(p, digits[: k + 1])
                outer = cylinder_measure(p, digits[:k])
                radii = (inner, (inner + outer) / 2, outer * shrink)
                outcomes[k] = all(ball_containment_check(p, digits[: k + 1], r) for r in radii)
            failing = [k for k, ok in outcomes.items() if not ok]
            k0 = max(failing) + 1 if failing else 1
            if k0 > top:
                errors.append(f"{list(digits)}: containment fails at k={top}")
                continue
            if failing:
                warnings.append(f"{list(digits)}: fails below k0={k0} at k={failing}")
            k0_values.append(k0)
        return SuiteResult(
            suite="lemma-int",
            seed=seed,
            passed=not errors,
            checked=samples,
            errors=errors,
            warnings=warnings,
            details={
                "top": top,
                "radii": ["inner", "midpoint", "near_outer"],
                "max_k0": max(k0_values, default=None),
            },
        )

    def frostman(
        self,
        seed: int,
        samples: int = 1_000,
        depth: int = 12,
        levels: int = 4,
        eps: float = 0.1,
    ) -> SuiteResult:
        """Normalisation and domination of nu on GoodBand(10, 27), plus its Holder exponent."""
        p = self.partition
        model = make_model("goodband", {"N": 10, "M": 27})
        lo, hi = model.admissible_range(1)
        digits = np.arange(lo, (hi or lo) + 1)
        log_weights = np.array([log_digit_weight(model, 1, int(d)) for d in digits])
        log_atoms = p.log_atoms(digits)
        exponent = 1.0 / (1.0 + p.theta + eps)

        errors: list[str] = []
        log_nu, log_length = np.zeros(1), np.zeros(1)
        for k in range(1, levels + 1):
            log_nu = np.add.outer(log_nu, log_weights).ravel()
            log_length = np.add.outer(log_length, log_atoms).ravel()
            total = math.fsum(np.exp(log_nu))
            if abs(total - 1.0) > 1e-10:
                errors.append(f"level {k}: nu sums to {total!r}")
            excess = log_nu - exponent * log_length
            if np.max(excess) > 1e-12:
                worst = int(np.argmax(excess))
                errors.append(f"level {k}: nu exceeds lambda^{exponent:.6g} on cylinder #{worst}")

        s_star = moran_root(model, p).s_star
        holder = empirical_holder(model, p, "nu", n_samples=samples, depth=depth, seed=seed)
        if holder < s_star - 0.05:
            errors.append(f"holder exponent {holder:.6g} is below moran root {s_star:.6g} - 0.05")
        return SuiteResult(
            suite="frostman",
            seed=seed,
            passed=not errors,
            checked=int(log_nu.size),
            errors=errors,
            details={"s_star": s_star, "holder": holder, "levels": levels},
        )

    def jarnik_bracket(self, seed: int, levels: tuple[int, ...] = (5, 10, 15, 20)) -> SuiteResult:
        """Tilde cover sums around sigma = 1/2 for s_n = 2^n shrink above it and grow below."""
        p = self.partition
        model = make_model({"kind": "jarnik", "s": {"kind": "geometric", "base": 2}, "N": 4})
        sigma = 1.0 / (1.0 + p.theta)
        above = [cover_sum(model, p, k, sigma + 0.05, tilde=True).log_value for k in levels]
        below = [cover_sum(model, p, k, sigma - 0.05, tilde=True).log_value for k in levels]

        errors: list[str] = []
        warnings: list[str] = []
        if not above[-1] < math.log(1e-3):
            errors.append(f"sum at sigma + 0.05, k={levels[-1]}: {math.exp(above[-1]):.6g}")
        if not below[-1] > math.log(1e3):
            errors.append(f"sum at sigma - 0.05, k={levels[-1]}: {math.exp(below[-1]):.6g}")
        if any(b >= a for a, b in zip(above, above[1:])):
            warnings.append(f"sums at sigma + 0.05 are not decreasing in k: {above}")
        if any(b <= a for a, b in zip(below, below[1:])):
            warnings.append(f"sums at sigma - 0.05 are not increasing in k: {below}")

        doubly = sigma_from_sequence(
            p.theta, SequenceSpec(kind=SequenceKind.DOUBLY_EXPONENTIAL), horizon=20
        )
        target = 1.0 / (1.0 + 2.0 * p.theta)
        if abs(doubly.sigma - target) > 1e-3:
            errors.append(f"sigma for 2^(2^n) is {doubly.sigma:.6g}, expected {target:.6g}")
        return SuiteResult(
            suite="jarnik-bracket",
            seed=seed,
            passed=not errors,
            checked=2 * len(levels) + 1,
            errors=errors,
            warnings=warnings,
            details={
                "levels": list(levels),
                "log_sums_above": above,
                "log_sums_below": below,
                "sigma_doubly_exponential": doubly.sigma,
            },
        )

    def runner(self, name: str) -> Callable[[int], SuiteResult]:
        runners: dict[str, Callable[[int], SuiteResult]] = {
            "roundtrip": self.roundtrip,
            "shift": self.shift,
            "lemma-int": self.lemma_int,
            "frostman": self.frostman,
            "jarnik-bracket": self.jarnik_bracket,
        }
        if name not in runners:
            raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
        return runners[name]


def run_suite(
    name: str,
    seed: int = 0,
    partition: Partition | None = None,
    raise_on_failure: bool = True,
) -> SuiteResult:
    """Run a named suite.

    Raises:
        VerificationFailed: The suite reported errors and ``raise_on_failure`` is set.
    """
    runner = PropertySuites(partition).runner(name)
    started = time.perf_counter()
    result = runner(seed)
    result.elapsed = time.perf_counter() - started
    logger.info(
        "suite %s (seed %d): %s, %d checked in %.2fs",
        name,
        seed,
        "passed" if result.passed else "failed",
        result.checked,
        result.elapsed,
    )
    for warning in result.warnings[:10]:
        logger.warning("%s: %s", name, warning)
    if raise_on_failure and not result.passed:
        raise VerificationFailed(
            f"suite {name} failed with {len(result.errors)} errors",
            result.errors,
            details=result.model_dump(mode="json", exclude={"errors"}),
        )
    return result
