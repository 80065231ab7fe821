"""
The search command.
"""
import click

from src.cli.common import Timer, emit, format_option, handles_errors
from src.core.config import get_settings
from src.core.documents import serialize_algebra
from src.core.models import GeneratorKind, GenSpec, parse_axiom_id
from src.core.search import search


def _axiom_list(value: str):
    return [parse_axiom_id(item.strip()) for item in value.split(",") if item.strip()]


@click.command("search")
@click.option("--kind", type=click.Choice([k.value for k in GeneratorKind]), default="random-table",
              show_default=True)
@click.option("--atoms", type=int, default=None, help="Exact atom count (sets both bounds).")
@click.option("--min-atoms", type=int, default=1, show_default=True)
@click.option("--max-atoms", type=int, default=3, show_default=True)
@click.option("--require", default="C1,C2,C3", show_default=True, help="Comma-separated axiom ids.")
@click.option("--forbid", default="", help="Comma-separated axiom ids that must fail.")
@click.option("--limit", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=None, help="Defaults to CONDALG_SEED.")
@format_option
@handles_errors
def search_command(kind, atoms, min_atoms, max_atoms, require, forbid, limit, seed, fmt):
    """Find algebras satisfying the required axioms and violating the forbidden ones."""
    timer = Timer()
    if seed is None:
        seed = get_settings().seed
    if atoms is not None:
        min_atoms = max_atoms = atoms
    spec = GenSpec(kind=GeneratorKind(kind), min_atoms=min_atoms, max_atoms=max_atoms, seed=seed)
    required, forbidden = _axiom_list(require), _axiom_list(forbid)
    found = search(spec, required, forbidden, limit)
    emit(
        fmt, "search", timer,
        inputs={
            "kind": kind, "min_atoms": min_atoms, "max_atoms": max_atoms, "limit": limit,
            "require": [a.value for a in required], "forbid": [a.value for a in forbidden],
        },
        seed=seed,
        result=[{"atoms": alg.atom_count, "cond": [list(r) for r in alg.cond]} for alg in found],
        text="\n".join(serialize_algebra(alg) for alg in found) or "no algebra found",
    )


COMMANDS = [search_command]
