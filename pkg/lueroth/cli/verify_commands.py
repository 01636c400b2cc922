"""Property-suite CLI command."""

import click

from lueroth.cli.options import (
    build_config,
    emit,
    output_option,
    partition_option,
    seed_option,
    to_json,
)
from lueroth.core.exceptions import VerificationFailed
from lueroth.verification import SUITE_NAMES, run_suite


@click.command(name="verify")
@click.option("--suite", type=click.Choice(SUITE_NAMES), required=True)
@partition_option
@seed_option
@output_option
def verify_command(suite: str, partition: str, seed: int, output: str | None) -> None:
    """Run a property suite and print its summary.

    A failing suite prints nothing on standard output; its summary goes into
    the error object on standard error and the exit status is 2.
    """
    config = build_config(partition, output=output, seed=seed)
    result = run_suite(
        suite, seed=config.seed, partition=config.make_partition(), raise_on_failure=False
    )
    summary = result.model_dump(mode="json", exclude={"elapsed"})
    if not result.passed:
        summary.pop("errors")
        raise VerificationFailed(f"suite {suite} failed", result.errors, details=summary)
    emit(to_json(summary), config)
