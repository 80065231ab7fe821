"""
Shared pieces of the command line: logging setup, output formats, error
translation and exit codes.
"""
import functools
import json
import logging
import sys
import time
from typing import Any, Dict, Iterable, List, Optional

import click
import structlog
from pydantic import ValidationError

from src.core.errors import CondAlgError
from src.core.models import CommandReport, Verdict

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def configure_logging(level: str):
    """Structured JSON logs on stderr; stdout carries command output only."""
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level.upper(), logging.WARNING),
                        format="%(message)s", force=True)
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer()
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True,
    help="Output format.",
)


def handles_errors(command):
    """Map input and precondition errors to exit code 2."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (CondAlgError, ValidationError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INPUT)
        except click.exceptions.Exit:
            raise
        except Exception as e:
            logger.error("Command failed", command=command.__name__, error=str(e))
            raise
    return wrapper


class Timer:
    def __init__(self):
        self._start = time.time()

    @property
    def elapsed_ms(self) -> int:
        return int((time.time() - self._start) * 1000)


def _format_verdict(verdict: Verdict) -> str:
    if verdict.holds:
        return f"{verdict.law}: holds"
    return f"{verdict.law}: fails at {json.dumps(verdict.counterexample, sort_keys=True)}"


def emit(
    fmt: str,
    command: str,
    timer: Timer,
    inputs: Optional[Dict[str, Any]] = None,
    verdicts: Iterable[Verdict] = (),
    result: Any = None,
    text: Optional[str] = None,
    seed: Optional[int] = None,
    exit_on_failure: bool = True,
):
    """Print the command outcome and exit 1 if any verdict fails."""
    verdicts = list(verdicts)
    if fmt == "json":
        report = CommandReport(
            command=command,
            inputs=inputs or {},
            verdicts=[v.summary() for v in verdicts],
            seed=seed,
            elapsed_ms=timer.elapsed_ms,
            result=result,
        )
        click.echo(report.model_dump_json(indent=2, exclude_none=True))
    else:
        lines: List[str] = [_format_verdict(v) for v in verdicts]
        if text:
            lines.append(text.rstrip("\n"))
        if lines:
            click.echo("\n".join(lines))
    if exit_on_failure and any(not v.holds for v in verdicts):
        sys.exit(EXIT_FAILED)
