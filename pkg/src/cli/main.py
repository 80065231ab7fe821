"""
Command-line entry point: one click group with every command registered on it.
"""
import click
import structlog

from src import __version__
from src.cli.common import configure_logging
from src.core.config import get_settings

# Route structlog to stderr before any command module can log.
configure_logging(get_settings().effective_log_level)

from src.cli import algebras, frames, search, suites  # noqa: E402

logger = structlog.get_logger(__name__)


@click.group()
@click.option("--verbose", is_flag=True, default=False, help="Log at DEBUG level on stderr.")
@click.version_option(version=__version__, prog_name="condalg")
def cli(verbose):
    """Finite conditional algebras: checks, duals, extensions and verification suites."""
    settings = get_settings()
    configure_logging("DEBUG" if verbose else settings.effective_log_level)
    logger.debug("Command line started", log_level=settings.effective_log_level)


# Include command modules
for module in (algebras, frames, search, suites):
    for command in module.COMMANDS:
        cli.add_command(command)
