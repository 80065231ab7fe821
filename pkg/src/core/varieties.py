"""
Varieties of conditional algebras and their frame counterparts.

Frame conditions are evaluated literally over points and subset masks. The
A-conditions and T-conditions share evaluators; they differ only in where
the frame comes from.
"""
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple, Union

import networkx as nx
import structlog

from src.core.boolean_core import up_set
from src.core.conditional_algebra import CondAlg, check_axiom, d_set, require_CA
from src.core.duality import em, ultrafilter_frame
from src.core.errors import ContractError, InputError
from src.core.generators import random_singleton_frame, sample_rng
from src.core.hybrid_frames import TFrame, cm, is_upward_closed
from src.core.models import AxiomId, FrameCondId, Verdict, VarietyTag, parse_axiom_id, parse_frame_cond_id
from src.core.registry import law_registry

logger = structlog.get_logger(__name__)

Witness = Optional[Dict[str, int]]

# Frame condition paired with each axiom on the ultrafilter frame
CORRESPONDENCE_PAIRS: Dict[AxiomId, FrameCondId] = {
    AxiomId.C1STAR: FrameCondId.NON_EMPTY_MIDDLE,
    AxiomId.C3STAR: FrameCondId.PSB_WITNESS,
    AxiomId.C4: FrameCondId.A4,
    AxiomId.C5: FrameCondId.A5,
    AxiomId.C6: FrameCondId.A6,
    AxiomId.C7: FrameCondId.A7,
    AxiomId.C8: FrameCondId.A8,
}

CANONICITY_PAIRS: Dict[FrameCondId, AxiomId] = {
    FrameCondId.T3STAR: AxiomId.C3STAR,
    FrameCondId.T4: AxiomId.C4,
    FrameCondId.T5: AxiomId.C5,
    FrameCondId.T6: AxiomId.C6,
    FrameCondId.T7: AxiomId.C7,
    FrameCondId.T8: AxiomId.C8,
}

_T_CONDITIONS = set(CANONICITY_PAIRS)


def variety_poset() -> nx.DiGraph:
    """Edges run from a variety to the varieties containing it."""
    graph = nx.DiGraph()
    graph.add_nodes_from(law_registry.list_varieties())
    graph.add_edges_from([
        (VarietyTag.S2IA, VarietyTag.PSC),
        (VarietyTag.S2IA, VarietyTag.SIA),
        (VarietyTag.PSC, VarietyTag.PSB),
        (VarietyTag.SIA, VarietyTag.PSB),
        (VarietyTag.PSB, VarietyTag.CA),
    ])
    return graph


def is_upward_closed_tagset(tags: Iterable[VarietyTag]) -> bool:
    graph = variety_poset()
    members = set(tags)
    return all(nx.descendants(graph, tag) <= members for tag in members)


def classify_variety(alg: CondAlg) -> Set[VarietyTag]:
    tags = law_registry.list_varieties()
    defining = set().union(*(law_registry.axioms_for_variety(tag) for tag in tags))
    holds = {axiom for axiom in defining if check_axiom(alg, axiom).holds}
    return {tag for tag in tags if law_registry.axioms_for_variety(tag) <= holds}


# Frame condition evaluators, each returning the first failing assignment

def _transitive(f: TFrame) -> Witness:
    # TxYy and TyZz give TxZz
    for x, y_set in product(range(f.point_count), range(f.full + 1)):
        for y in range(f.point_count):
            if not f.related(x, y_set, y):
                continue
            for z_set in range(f.full + 1):
                missing = f.image[y][z_set] & ~f.image[x][z_set]
                if missing:
                    z = (missing & -missing).bit_length() - 1
                    return {"x": x, "Y": y_set, "y": y, "Z": z_set, "z": z}
    return None


def _reflexive(f: TFrame) -> Witness:
    for x in range(f.point_count):
        if not f.related(x, 1 << x, x):
            return {"x": x}
    return None


def _symmetric(f: TFrame) -> Witness:
    # TxYy gives Tx{y}z for some z ∈ Y
    for x, y, y_set in product(range(f.point_count), range(f.point_count), range(f.full + 1)):
        if f.related(x, y_set, y) and f.image[x][1 << y] & y_set == 0:
            return {"x": x, "y": y, "Y": y_set}
    return None


def _euclidean(f: TFrame) -> Witness:
    # TxYy and TxZz give TyZz
    for x, y, z in product(range(f.point_count), repeat=3):
        for y_set, z_set in product(range(f.full + 1), repeat=2):
            if f.related(x, y_set, y) and f.related(x, z_set, z) and not f.related(y, z_set, z):
                return {"x": x, "y": y, "z": z, "Y": y_set, "Z": z_set}
    return None


def _guarded(f: TFrame) -> Witness:
    # TxYy and T(x, X) ∩ Y ⊆ Z give TxZy
    for x, y in product(range(f.point_count), repeat=2):
        reach = f.image[x][f.full]
        for y_set in range(f.full + 1):
            if not f.related(x, y_set, y):
                continue
            for z_set in range(f.full + 1):
                if reach & y_set & ~z_set == 0 and not f.related(x, z_set, y):
                    return {"x": x, "y": y, "Y": y_set, "Z": z_set}
    return None


def _singleton_witness(f: TFrame, allow_empty: bool) -> Witness:
    # TxYy gives Tx{z}y for some z ∈ Y
    for x, y, y_set in product(range(f.point_count), range(f.point_count), range(f.full + 1)):
        if y_set == 0 and not allow_empty:
            continue
        if not f.related(x, y_set, y):
            continue
        if not any(f.related(x, 1 << z, y) for z in range(f.point_count) if y_set >> z & 1):
            return {"x": x, "y": y, "Y": y_set}
    return None


def _non_empty_middle(f: TFrame) -> Witness:
    for x, y in product(range(f.point_count), repeat=2):
        if f.related(x, 0, y):
            return {"x": x, "y": y}
    return None


_EVALUATORS: Dict[FrameCondId, Callable[[TFrame], Witness]] = {
    FrameCondId.A4: _transitive,
    FrameCondId.T4: _transitive,
    FrameCondId.A5: _reflexive,
    FrameCondId.T5: _reflexive,
    FrameCondId.A6: _symmetric,
    FrameCondId.T6: _symmetric,
    FrameCondId.A7: _euclidean,
    FrameCondId.T7: _euclidean,
    FrameCondId.A8: _guarded,
    FrameCondId.T8: _guarded,
    FrameCondId.T3STAR: lambda f: _singleton_witness(f, allow_empty=False),
    FrameCondId.PSB_WITNESS: lambda f: _singleton_witness(f, allow_empty=True),
    FrameCondId.NON_EMPTY_MIDDLE: _non_empty_middle,
}


def check_frame_condition(f: TFrame, cond: Union[FrameCondId, str]) -> Verdict:
    cond_id = cond if isinstance(cond, FrameCondId) else parse_frame_cond_id(cond)
    if cond_id in _T_CONDITIONS and not is_upward_closed(f):
        raise ContractError(f"{cond_id.value} is evaluated on conditional spaces only")
    counterexample = _EVALUATORS[cond_id](f)
    if counterexample is None:
        return Verdict.ok(cond_id.value)
    return Verdict.fail(cond_id.value, counterexample)


def correspondence_check(alg: CondAlg, axiom: Union[AxiomId, str]) -> Verdict:
    """The axiom holds in the algebra iff its frame condition holds on the
    ultrafilter frame. C3* is paired jointly with C1* against the singleton
    witness condition, and separately checked as the implication from T3*."""
    axiom_id = axiom if isinstance(axiom, AxiomId) else parse_axiom_id(axiom)
    if axiom_id not in CORRESPONDENCE_PAIRS:
        raise InputError(f"no frame condition corresponds to {axiom_id.value}")
    require_CA(alg, "correspondence_check")
    frame = ultrafilter_frame(alg)
    cond_id = CORRESPONDENCE_PAIRS[axiom_id]
    equation = check_axiom(alg, axiom_id)
    condition = check_frame_condition(frame, cond_id)
    details = {"axiom": axiom_id.value, "condition": cond_id.value}
    if axiom_id == AxiomId.C3STAR:
        t3_star = check_frame_condition(frame, FrameCondId.T3STAR)
        if t3_star.holds and not equation.holds:
            return Verdict.fail(
                "correspondence", equation.counterexample, property="t3star_implies_c3star", **details
            )
        c1_star = check_axiom(alg, AxiomId.C1STAR)
        equation = Verdict(
            law="C1star+C3star",
            holds=equation.holds and c1_star.holds,
            counterexample=equation.counterexample or c1_star.counterexample,
        )
    details.update(equation=equation.holds, frame_condition=condition.holds)
    if equation.holds != condition.holds:
        return Verdict.fail("correspondence", condition.counterexample or equation.counterexample, **details)
    return Verdict.ok("correspondence", **details)


def canonicity_check(f: TFrame, cond: Union[FrameCondId, str]) -> Verdict:
    """The frame condition holds iff its equation holds in the full complex
    algebra."""
    cond_id = cond if isinstance(cond, FrameCondId) else parse_frame_cond_id(cond)
    if cond_id not in CANONICITY_PAIRS:
        raise InputError(f"no equation corresponds to {cond_id.value}")
    if not is_upward_closed(f):
        raise ContractError("canonicity_check requires a conditional space")
    axiom_id = CANONICITY_PAIRS[cond_id]
    condition = check_frame_condition(f, cond_id)
    equation = check_axiom(cm(f), axiom_id)
    details = {
        "condition": cond_id.value,
        "axiom": axiom_id.value,
        "frame_condition": condition.holds,
        "equation": equation.holds,
    }
    if condition.holds != equation.holds:
        return Verdict.fail("canonicity", condition.counterexample or equation.counterexample, **details)
    return Verdict.ok("canonicity", **details)


def psb_s_relation(alg: CondAlg) -> Tuple[Tuple[int, int, int], ...]:
    """``S(x,y,z)`` iff ``T_A(x,{y},z)``; the relation must recover T_A as
    ``T_A(x,K,z)`` iff ``S(x,y,z)`` for some y ∈ K."""
    if VarietyTag.PSB not in classify_variety(alg):
        raise ContractError("psb_s_relation requires a pseudo-subordination algebra")
    frame = ultrafilter_frame(alg)
    m = frame.point_count
    relation = tuple(
        (x, y, z)
        for x, y, z in product(range(m), repeat=3)
        if frame.related(x, 1 << y, z)
    )
    for x, k in product(range(m), range(frame.full + 1)):
        recovered = 0
        for y in range(m):
            if k >> y & 1:
                recovered |= frame.image[x][1 << y]
        if recovered != frame.image[x][k]:
            raise ContractError(f"S does not recover T_A at x={x}, K={k}")
    return relation


def lemma_t_middle_check(alg: CondAlg) -> Verdict:
    """C1* holds iff the ultrafilter frame has no ∅-middle triple."""
    require_CA(alg, "lemma_t_middle_check")
    c1_star = check_axiom(alg, AxiomId.C1STAR).holds
    empty = _non_empty_middle(ultrafilter_frame(alg))
    if c1_star != (empty is None):
        counterexample = empty or check_axiom(alg, AxiomId.C1STAR).counterexample
        return Verdict.fail("t_middle", counterexample, c1_star=c1_star)
    return Verdict.ok("t_middle", c1_star=c1_star)


def _ultrafilter_set(alg: CondAlg, u: int):
    return frozenset(x for x in alg.base.elements() if x >> u & 1)


def fundamental_lemma_check(alg: CondAlg) -> Verdict:
    """Under C3*: D_H(F) ⊆ u with F proper gives some v ∈ φ(F) with
    D_H(v) ⊆ u."""
    require_CA(alg, "fundamental_lemma_check")
    if not check_axiom(alg, AxiomId.C3STAR).holds:
        raise ContractError("fundamental_lemma_check requires C3*")
    base = alg.base
    ups = [up_set(base, g) for g in base.elements()]
    ultrafilters = [_ultrafilter_set(alg, u) for u in range(alg.atom_count)]
    for h, f in product(base.elements(), repeat=2):
        if f == 0:
            continue
        consequents = d_set(alg, ups[h], ups[f])
        for u, members in enumerate(ultrafilters):
            if not consequents <= members:
                continue
            if not any(
                d_set(alg, ups[h], ultrafilters[v]) <= members
                for v in range(alg.atom_count) if f >> v & 1
            ):
                return Verdict.fail("fundamental_lemma", {"H": h, "F": f, "u": u})
    return Verdict.ok("fundamental_lemma")


def fundamental_lemma2_check(alg: CondAlg) -> Verdict:
    """D_H(F) ⊆ v with H proper gives some u ∈ φ(H) with D_u(F) ⊆ v."""
    require_CA(alg, "fundamental_lemma2_check")
    base = alg.base
    ups = [up_set(base, g) for g in base.elements()]
    ultrafilters = [_ultrafilter_set(alg, u) for u in range(alg.atom_count)]
    for h, f in product(base.elements(), repeat=2):
        if h == 0:
            continue
        consequents = d_set(alg, ups[h], ups[f])
        for v, members in enumerate(ultrafilters):
            if not consequents <= members:
                continue
            if not any(
                d_set(alg, ultrafilters[u], ups[f]) <= members
                for u in range(alg.atom_count) if h >> u & 1
            ):
                return Verdict.fail("fundamental_lemma2", {"H": h, "F": f, "v": v})
    return Verdict.ok("fundamental_lemma2")


def canonical_extension_closure_check(alg: CondAlg) -> Verdict:
    """Em(alg) carries every variety tag of alg."""
    tags = classify_variety(alg)
    extended = classify_variety(em(alg))
    if not tags <= extended:
        missing = sorted(tag.value for tag in tags - extended)
        return Verdict.fail("em_closure", {"missing": missing})
    return Verdict.ok("em_closure", tags=sorted(tag.value for tag in tags))


def c6_c8_entailment_search(samples: int = 500, seed: int = 0, atoms: int = 2) -> Verdict:
    """Inside PSB, C6 entails C8 on every sample; also report the first
    sampled PSB algebra with C8 but not C6."""
    witness: Optional[List[List[int]]] = None
    psb_count = 0
    for index in range(samples):
        rng = sample_rng("c6-c8", atoms, atoms, seed, index)
        alg = cm(random_singleton_frame(atoms, rng))
        if VarietyTag.PSB not in classify_variety(alg):
            continue
        psb_count += 1
        c6 = check_axiom(alg, AxiomId.C6).holds
        c8 = check_axiom(alg, AxiomId.C8).holds
        if c6 and not c8:
            return Verdict.fail("c6_entails_c8", {"index": index}, table=[list(row) for row in alg.cond])
        if c8 and not c6 and witness is None:
            witness = [list(row) for row in alg.cond]
    logger.debug("C6/C8 search finished", samples=samples, psb=psb_count, witness=witness is not None)
    return Verdict.ok("c6_entails_c8", psb_samples=psb_count, c8_without_c6=witness)
