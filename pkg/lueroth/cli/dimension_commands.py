"""Dimension CLI commands: dim, sigma, sweep and cover."""

import json
import logging
from typing import Any

import click

from lueroth.cli.options import (
    build_config,
    emit,
    format_float,
    model_option,
    output_option,
    parse_int_list,
    partition_option,
    read_text_argument,
    to_csv,
    to_json,
)
from lueroth.core.constraints import GoodSet, SequenceSpec, make_model
from lueroth.core.dimension import (
    DimensionEstimate,
    cover_sum,
    epsilon_n_diagnostic,
    moran_root,
    sigma_from_sequence,
)
from lueroth.core.exceptions import DivergentSumError, DomainError

logger = logging.getLogger(__name__)


def _estimate_payload(estimate: DimensionEstimate) -> dict[str, Any]:
    payload = estimate.model_dump(mode="json")
    payload["gap"] = estimate.gap
    return payload


@click.command(name="dim")
@partition_option
@model_option()
@click.option("--k", type=int, default=None, help="Cover level (default: 1 or 12)")
@click.option("--tol", type=float, default=None, help="Bisection tolerance")
@click.option("--tilde/--no-tilde", default=None, help="Use tilde cylinders")
@output_option
def dim_command(
    partition: str,
    model: str,
    k: int | None,
    tol: float | None,
    tilde: bool | None,
    output: str | None,
) -> None:
    """Solve the Moran equation and compare with the theoretical dimension."""
    config = build_config(partition, model, output)
    p = config.make_partition()
    estimate = moran_root(config.make_model(p), p, k=k, tol=tol, tilde=tilde)
    emit(to_json(_estimate_payload(estimate)), config)


@click.command(name="sigma")
@click.option("--theta", type=float, default=1.0, show_default=True)
@click.option(
    "--sequence",
    default='{"kind": "geometric", "base": 2}',
    show_default=True,
    help="SequenceSpec JSON",
)
@click.option("--horizon", type=int, default=50, show_default=True)
@click.option("--eps", type=float, default=0.0, show_default=True)
@click.option("--window", type=int, default=1, show_default=True)
@output_option
def sigma_command(
    theta: float, sequence: str, horizon: int, eps: float, window: int, output: str | None
) -> None:
    """Finite-horizon sigma and tau of a Jarnik sequence."""
    config = build_config("classical", output=output)
    spec = SequenceSpec.model_validate_json(sequence)
    emit(to_json(sigma_from_sequence(theta, spec, horizon, eps, window)), config)


@click.command(name="sweep")
@partition_option
@model_option()
@click.option("--param", default="N", show_default=True, help="Model field to vary")
@click.option("--values", required=True, help="Comma-separated integer values")
@click.option("--k", type=int, default=None)
@click.option("--tol", type=float, default=None)
@output_option
def sweep_command(
    partition: str,
    model: str,
    param: str,
    values: str,
    k: int | None,
    tol: float | None,
    output: str | None,
) -> None:
    """Moran roots over a parameter list, as CSV.

    Columns: model_params (model JSON), k, s_star, theory, gap. Floats carry 17
    significant digits.
    """
    config = build_config(partition, output=output, fmt="csv")
    p = config.make_partition()
    base = json.loads(read_text_argument(model))
    rows = []
    for value in parse_int_list(values):
        instance = make_model({**base, param: value}, partition=p)
        estimate = moran_root(instance, p, k=k, tol=tol)
        logger.info("%s=%d: s*=%.12g", param, value, estimate.s_star)
        rows.append(
            [
                instance.describe(),
                estimate.level,
                format_float(estimate.s_star),
                format_float(estimate.theory.value if estimate.theory else None),
                format_float(estimate.gap),
            ]
        )
    emit(to_csv(rows), config)


@click.command(name="cover")
@partition_option
@model_option()
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--s", "s", type=float, required=True, help="Exponent in (0, 1]")
@click.option("--tilde", is_flag=True, help="Use tilde cylinders")
@click.option("--diagnostic", is_flag=True, help="Add the GoodSet contraction diagnostic")
@output_option
def cover_command(
    partition: str,
    model: str,
    k: int,
    s: float,
    tilde: bool,
    diagnostic: bool,
    output: str | None,
) -> None:
    """Print a cover sum as JSON.

    A divergent sum exits with status 2 and reports the sum in the error object.
    """
    config = build_config(partition, model, output)
    p = config.make_partition()
    instance = config.make_model(p)
    result = cover_sum(instance, p, k, s, tilde=tilde)
    payload = result.model_dump(mode="json")
    payload["value"] = None if result.divergent else result.value
    if diagnostic:
        if not isinstance(instance, GoodSet):
            raise DomainError("--diagnostic applies to goodset models")
        payload["diagnostic"] = epsilon_n_diagnostic(instance.n).model_dump(mode="json")
    if result.divergent:
        raise DivergentSumError(f"cover sum of {instance!r} diverges at s={s}", cover=payload)
    emit(to_json(payload), config)
