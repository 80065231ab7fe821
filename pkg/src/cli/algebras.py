"""
Commands taking an algebra document.
"""
import click

from src.cli.common import Timer, emit, format_option, handles_errors
from src.core.conditional_algebra import check_CA, check_axiom
from src.core.documents import (
    ALGEBRA_TYPE, document_type, load_algebra, parse_algebra, parse_frame, read_text, serialize_algebra,
    serialize_frame,
)
from src.core.duality import co_es_roundtrip, em, es_co_roundtrip, ultrafilter_frame
from src.core.extensions import finite_collapse_check, pi_table, sigma_table, smoothness_check
from src.core.models import Verdict, VarietyTag, parse_axiom_id
from src.core.multimodal import (
    check_mma_axioms, mma_roundtrip_check, q_monotonicity_check, qa_equals_box_phi_check, to_mma,
)
from src.core.registry import law_registry
from src.core.structure_theory import (
    congruence_duality_check, congruences, enumerate_subalgebras, equivalence_of_subalgebra,
    is_c_equivalence, is_closed_under_cond, subalgebra_duality_check,
)
from src.core.varieties import classify_variety, correspondence_check

file_argument = click.argument("path", type=click.Path(dir_okay=False))


@click.command("check")
@file_argument
@click.option("--axiom", "axioms", multiple=True, help="Axiom id to check (repeatable); default is CA.")
@format_option
@handles_errors
def check_command(path, axioms, fmt):
    """Check the CA axioms, or the given axioms, with least counterexamples."""
    timer = Timer()
    alg = load_algebra(path)
    if axioms:
        verdicts = [check_axiom(alg, parse_axiom_id(a)) for a in axioms]
    else:
        verdicts = [check_CA(alg)]
    emit(fmt, "check", timer, inputs={"file": path, "axioms": list(axioms)}, verdicts=verdicts)


@click.command("classify")
@file_argument
@format_option
@handles_errors
def classify_command(path, fmt):
    """List the varieties the algebra belongs to."""
    timer = Timer()
    alg = load_algebra(path)
    tags = classify_variety(alg)
    names = [tag.value for tag in VarietyTag if tag in tags]
    verdicts = [
        Verdict(law=tag.value, holds=tag in tags,
                details={"axioms": sorted(a.value for a in law_registry.axioms_for_variety(tag))})
        for tag in VarietyTag
    ]
    emit(fmt, "classify", timer, inputs={"file": path}, result=names,
         text=" ".join(names) if fmt == "text" else None, verdicts=verdicts if fmt == "json" else (),
         exit_on_failure=False)


@click.command("dual")
@file_argument
@format_option
@handles_errors
def dual_command(path, fmt):
    """Print the ultrafilter frame of the algebra."""
    timer = Timer()
    frame = ultrafilter_frame(load_algebra(path))
    emit(fmt, "dual", timer, inputs={"file": path},
         result={"points": frame.point_count, "triples": [list(t) for t in frame.triples]},
         text=serialize_frame(frame))


@click.command("em")
@file_argument
@format_option
@handles_errors
def em_command(path, fmt):
    """Print the canonical extension of the algebra."""
    timer = Timer()
    extension = em(load_algebra(path))
    emit(fmt, "em", timer, inputs={"file": path},
         result={"atoms": extension.atom_count, "cond": [list(r) for r in extension.cond]},
         text=serialize_algebra(extension))


@click.command("roundtrip")
@click.argument("path", type=click.Path(dir_okay=False))
@format_option
@handles_errors
def roundtrip_command(path, fmt):
    """Check the duality roundtrip for an algebra or a frame document."""
    timer = Timer()
    text = read_text(path)
    if document_type(text) == ALGEBRA_TYPE:
        verdict = co_es_roundtrip(parse_algebra(text))
    else:
        verdict = es_co_roundtrip(parse_frame(text))
    emit(fmt, "roundtrip", timer, inputs={"file": path}, verdicts=[verdict])


@click.command("correspond")
@file_argument
@click.option("--axiom", required=True, help="Axiom id: C1star, C3star or C4 to C8.")
@format_option
@handles_errors
def correspond_command(path, axiom, fmt):
    """Check an axiom against its condition on the ultrafilter frame."""
    timer = Timer()
    verdict = correspondence_check(load_algebra(path), parse_axiom_id(axiom))
    emit(fmt, "correspond", timer, inputs={"file": path, "axiom": axiom}, verdicts=[verdict],
         result=verdict.details)


@click.command("subalgebras")
@file_argument
@format_option
@handles_errors
def subalgebras_command(path, fmt):
    """List the Boolean subalgebras with their closure and dual equivalence."""
    timer = Timer()
    alg = load_algebra(path)
    verdict = subalgebra_duality_check(alg)
    frame = ultrafilter_frame(alg)
    rows = []
    for B in enumerate_subalgebras(alg):
        E = equivalence_of_subalgebra(B)
        rows.append({
            "elements": list(B.elements),
            "closed": is_closed_under_cond(alg, B),
            "blocks": list(E.blocks),
            "c_equivalence": is_c_equivalence(frame, E).holds,
        })
    text = "\n".join(
        f"{row['elements']} closed={row['closed']} blocks={row['blocks']} c_equivalence={row['c_equivalence']}"
        for row in rows
    )
    emit(fmt, "subalgebras", timer, inputs={"file": path}, verdicts=[verdict], result=rows, text=text)


@click.command("congruences")
@file_argument
@format_option
@handles_errors
def congruences_command(path, fmt):
    """List the conditional congruences by their T-closed sets."""
    timer = Timer()
    alg = load_algebra(path)
    verdict = congruence_duality_check(alg)
    closed = [c.Y.mask for c in congruences(alg)]
    emit(fmt, "congruences", timer, inputs={"file": path}, verdicts=[verdict], result=closed,
         text="T-closed: " + " ".join(str(y) for y in closed))


@click.command("mma")
@file_argument
@format_option
@handles_errors
def mma_command(path, fmt):
    """Check the multi-modal view of the algebra."""
    timer = Timer()
    alg = load_algebra(path)
    verdicts = [
        check_mma_axioms(to_mma(alg)), mma_roundtrip_check(alg), q_monotonicity_check(alg),
        qa_equals_box_phi_check(alg),
    ]
    emit(fmt, "mma", timer, inputs={"file": path}, verdicts=verdicts)


@click.command("extensions")
@file_argument
@format_option
@handles_errors
def extensions_command(path, fmt):
    """Compute the π- and σ-extensions and compare them."""
    timer = Timer()
    alg = load_algebra(path)
    verdicts = [finite_collapse_check(alg), smoothness_check(alg)]
    emit(fmt, "extensions", timer, inputs={"file": path}, verdicts=verdicts,
         result={"pi": pi_table(alg), "sigma": sigma_table(alg)})


COMMANDS = [
    check_command, classify_command, dual_command, em_command, roundtrip_command, correspond_command,
    subalgebras_command, congruences_command, mma_command, extensions_command,
]
