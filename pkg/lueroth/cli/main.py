"""alpha-lueroth command-line interface."""

import json
import logging
import sys
from collections.abc import Sequence

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from lueroth import __version__
from lueroth.cli.codec_commands import decode_command, encode_command
from lueroth.cli.dimension_commands import cover_command, dim_command, sigma_command, sweep_command
from lueroth.cli.partition_commands import partition_group
from lueroth.cli.verify_commands import verify_command
from lueroth.config import settings
from lueroth.core.exceptions import LuerothError, NumericFailure

EXIT_USAGE = 1
EXIT_NUMERIC = 2

console = Console(stderr=True)


def configure_logging(level: str) -> None:
    """Send package logs to standard error through rich."""
    package_logger = logging.getLogger("lueroth")
    for handler in list(package_logger.handlers):
        if isinstance(handler, RichHandler):
            package_logger.removeHandler(handler)
    package_logger.addHandler(RichHandler(console=Console(stderr=True), show_path=False))
    package_logger.setLevel(level)


@click.group()
@click.version_option(version=__version__, prog_name="alpha-lueroth")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Overrides ALPHA_LUEROTH_LOG_LEVEL",
)
@click.option("--precision", type=int, default=None, help="Working mantissa bits")
@click.pass_context
def cli(ctx: click.Context, log_level: str | None, precision: int | None) -> None:
    """alpha-Lueroth expansions and dimension experiments."""
    configure_logging((log_level or settings.log_level).upper())
    ctx.ensure_object(dict)
    ctx.obj["precision"] = precision


# Register commands
cli.add_command(partition_group)
cli.add_command(encode_command)
cli.add_command(decode_command)
cli.add_command(dim_command)
cli.add_command(sigma_command)
cli.add_command(sweep_command)
cli.add_command(cover_command)
cli.add_command(verify_command)


def _error_object(error: Exception) -> str:
    if isinstance(error, LuerothError):
        payload = error.to_dict()
    else:
        payload = {"error": type(error).__name__, "message": str(error)}
    return json.dumps(payload, default=str)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit status.

    Usage and input errors exit with 1, numeric failures with 2. Both print a
    JSON error object on standard error.
    """
    try:
        result = cli.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.exceptions.Abort:
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except NumericFailure as e:
        click.echo(_error_object(e), err=True)
        return EXIT_NUMERIC
    except (ValueError, ValidationError) as e:
        click.echo(_error_object(e), err=True)
        return EXIT_USAGE
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
