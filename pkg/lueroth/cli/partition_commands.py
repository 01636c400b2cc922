"""Partition CLI commands."""

import io

import click
from rich.console import Console
from rich.table import Table

from lueroth.cli.options import (
    build_config,
    emit,
    output_option,
    parse_int_list,
    partition_option,
    to_json,
)
from lueroth.core.partition import asymptotic_report

console = Console()

TABLE_WIDTH = 160


@click.group(name="partition")
def partition_group() -> None:
    """Inspect partitions."""
    pass


@partition_group.command(name="info")
@partition_option
@click.option("--n", "indices", default="1,2,10,100,10000", show_default=True, help="Indices")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "json"]),
    default="table",
    show_default=True,
)
@output_option
def partition_info(partition: str, indices: str, fmt: str, output: str | None) -> None:
    """Print t_n, a_n, n a_n / t_n and a_n / a_(n+1).

    With --output the table is written as plain text.
    """
    config = build_config(partition, output=output)
    p = config.make_partition()
    ns = parse_int_list(indices)
    report = asymptotic_report(p, ns)

    if fmt == "json":
        rows = [
            {
                "n": row.n,
                "t_n": p.format(p.tail(row.n)),
                "a_n": p.format(p.atom(row.n)),
                "mdt_ratio": row.mdt_ratio,
                "atom_ratio": row.atom_ratio,
            }
            for row in report.rows
        ]
        emit(to_json({"partition": repr(p), "theta": report.theta, "rows": rows}), config)
        return

    table = Table(title=repr(p))
    table.add_column("n", style="cyan", justify="right")
    table.add_column("t_n", style="green")
    table.add_column("a_n", style="green")
    table.add_column("n a_n / t_n", style="magenta")
    table.add_column("a_n / a_(n+1)", style="magenta")
    for row in report.rows:
        table.add_row(
            str(row.n),
            p.format(p.tail(row.n)),
            p.format(p.atom(row.n)),
            f"{row.mdt_ratio:.17g}",
            f"{row.atom_ratio:.17g}",
        )
    if config.output is None:
        console.print(table)
        return
    rendered = io.StringIO()
    Console(file=rendered, width=TABLE_WIDTH).print(table)
    emit(rendered.getvalue(), config)
