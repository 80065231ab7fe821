"""
Commands taking a frame document.
"""
import click

from src.cli.common import Timer, emit, format_option, handles_errors
from src.core.documents import load_frame, serialize_algebra
from src.core.hybrid_frames import cm
from src.core.models import parse_frame_cond_id
from src.core.varieties import canonicity_check


@click.command("cm")
@click.argument("path", type=click.Path(dir_okay=False))
@format_option
@handles_errors
def cm_command(path, fmt):
    """Print the full complex algebra of the frame."""
    timer = Timer()
    algebra = cm(load_frame(path))
    emit(fmt, "cm", timer, inputs={"file": path},
         result={"atoms": algebra.atom_count, "cond": [list(r) for r in algebra.cond]},
         text=serialize_algebra(algebra))


@click.command("canonicity")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--cond", "cond", required=True, help="Frame condition id: T3star or T4 to T8.")
@format_option
@handles_errors
def canonicity_command(path, cond, fmt):
    """Check a frame condition against its equation in the complex algebra."""
    timer = Timer()
    verdict = canonicity_check(load_frame(path), parse_frame_cond_id(cond))
    emit(fmt, "canonicity", timer, inputs={"file": path, "cond": cond}, verdicts=[verdict],
         result=verdict.details)


COMMANDS = [cm_command, canonicity_command]
