"""Shared CLI options, run configuration and output helpers."""

import csv
import io
import json
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, Literal, TypeVar

import click
from pydantic import BaseModel, Field, field_validator

from lueroth.core.constraints import ConstraintModel, make_model, model_spec_adapter
from lueroth.core.constraints.specs import ModelSpec
from lueroth.core.exceptions import DomainError
from lueroth.core.partition import Partition, PartitionSpec, make_partition

F = TypeVar("F", bound=Callable[..., Any])

CSV_COLUMNS = ("model_params", "k", "s_star", "theory", "gap")


class RunConfig(BaseModel):
    """Validated parameters of one CLI invocation."""

    partition: PartitionSpec = Field(default_factory=PartitionSpec.classical)
    model: ModelSpec | None = None
    precision: int | None = Field(default=None, ge=53)
    output: Path | None = None
    format: Literal["json", "csv"] = "json"
    seed: int = 0
    params: dict[str, Any] = Field(default_factory=dict)

    @field_validator("output")
    @classmethod
    def output_dir_exists(cls, value: Path | None) -> Path | None:
        if value is not None and not value.parent.exists():
            raise ValueError(f"output directory does not exist: {value.parent}")
        return value

    def make_partition(self) -> Partition:
        return make_partition(self.partition, self.precision)

    def make_model(self, partition: Partition | None = None) -> ConstraintModel:
        if self.model is None:
            raise DomainError("this command needs --model")
        return make_model(self.model, partition=partition)


def read_text_argument(text: str) -> str:
    """Inline text, or the contents of a file given as ``@path``."""
    if not text.startswith("@"):
        return text
    path = Path(text[1:])
    if not path.is_file():
        raise DomainError(f"file not found: {path}")
    return path.read_text(encoding="utf-8")


def parse_partition(text: str) -> PartitionSpec:
    """``classical``, a JSON PartitionSpec, or ``@file`` holding one."""
    text = read_text_argument(text).strip()
    if text == "classical":
        return PartitionSpec.classical()
    if text == "classical-exact":
        return PartitionSpec.classical(exact=True)
    return PartitionSpec.model_validate_json(text)


def parse_model(text: str | None) -> ModelSpec | None:
    if text is None:
        return None
    return model_spec_adapter.validate_json(read_text_argument(text))


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from e


def build_config(
    partition: str,
    model: str | None = None,
    output: str | None = None,
    fmt: str = "json",
    seed: int = 0,
    **params: Any,
) -> RunConfig:
    ctx = click.get_current_context(silent=True)
    precision = ctx.find_root().obj.get("precision") if ctx and ctx.find_root().obj else None
    return RunConfig(
        partition=parse_partition(partition),
        model=parse_model(model),
        precision=precision,
        output=Path(output) if output else None,
        format=fmt,  # type: ignore[arg-type]
        seed=seed,
        params=params,
    )


def partition_option(func: F) -> F:
    return click.option(
        "--partition",
        default="classical",
        show_default=True,
        help='"classical", "classical-exact", a PartitionSpec JSON object, or @file',
    )(func)


def model_option(required: bool = True) -> Callable[[F], F]:
    return click.option(
        "--model",
        required=required,
        help='Model spec JSON, e.g. \'{"kind":"goodband","N":2,"M":4}\', or @file',
    )


def output_option(func: F) -> F:
    return click.option(
        "--output", type=click.Path(dir_okay=False), help="Write to this file instead of stdout"
    )(func)


def seed_option(func: F) -> F:
    return click.option("--seed", type=int, default=0, show_default=True, help="Random seed")(
        func
    )


def to_json(payload: BaseModel | dict[str, Any]) -> str:
    if isinstance(payload, BaseModel):
        return payload.model_dump_json(indent=2)
    return json.dumps(payload, indent=2, default=str)


def format_float(value: float | None) -> str:
    return "" if value is None else format(value, ".17g")


def to_csv(rows: Sequence[Sequence[Any]], columns: Sequence[str] = CSV_COLUMNS) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def emit(text: str, config: RunConfig) -> None:
    """Write a result to ``config.output`` or standard output."""
    if config.output is None:
        click.echo(text, nl=not text.endswith("\n"))
        return
    config.output.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
