"""Codec CLI commands."""

import click

from lueroth.cli.options import build_config, emit, output_option, partition_option, to_json
from lueroth.core.codec import DigitSequence, decode, encode


@click.command(name="encode")
@partition_option
@click.option("--x", "x", required=True, help='Point in (0, 1]: decimal or ratio such as "5/12"')
@click.option("--k", "k_max", type=int, default=20, show_default=True, help="Most digits")
@output_option
def encode_command(partition: str, x: str, k_max: int, output: str | None) -> None:
    """Print the digits of x as JSON."""
    config = build_config(partition, output=output)
    p = config.make_partition()
    emit(to_json(encode(p, x, k_max)), config)


@click.command(name="decode")
@partition_option
@click.option("--digits", required=True, help="Comma-separated digits, e.g. 2,2")
@click.option("--sig", type=int, default=17, show_default=True, help="Significant digits")
@output_option
def decode_command(partition: str, digits: str, sig: int, output: str | None) -> None:
    """Print the point with the given finite expansion."""
    config = build_config(partition, output=output)
    p = config.make_partition()
    emit(p.format(decode(p, DigitSequence.parse(digits)), sig), config)
