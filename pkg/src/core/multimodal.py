"""
Multi-modal antitone algebras: families of necessity operators □_b indexed
by a Boolean subalgebra, antitone in the index.
"""
from itertools import product
from typing import Dict, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.core.boolean_core import FinBoolAlg, submasks, supermasks, up_set
from src.core.conditional_algebra import CondAlg, check_axiom, d_set, require_CA, table_difference
from src.core.duality import ultrafilter_frame
from src.core.errors import ContractError, InputError
from src.core.hybrid_frames import cm
from src.core.models import AxiomId, Verdict

logger = structlog.get_logger(__name__)


def is_boolean_subalgebra(base: FinBoolAlg, elements) -> bool:
    members = set(elements)
    if 0 not in members or base.top not in members:
        return False
    return all(
        (x ^ base.top) in members and (x & y) in members and (x | y) in members
        for x in members for y in members
    )


class MMAlg(BaseModel):
    """Boxes ``□_b`` for b in ``index_set``, each stored as a unary table."""

    model_config = ConfigDict(frozen=True)

    base: FinBoolAlg
    index_set: Tuple[int, ...]
    boxes: Dict[int, Tuple[int, ...]]

    @field_validator("index_set", mode="before")
    @classmethod
    def _sorted_index(cls, value):
        return tuple(sorted(set(value)))

    @model_validator(mode="after")
    def _check_family(self) -> "MMAlg":
        if any(b < 0 or b >= self.base.size for b in self.index_set):
            raise ValueError("index set contains an element outside the algebra")
        if not is_boolean_subalgebra(self.base, self.index_set):
            raise ValueError("index set is not a Boolean subalgebra")
        if set(self.boxes) != set(self.index_set):
            raise ValueError("boxes must be given for exactly the index set")
        for b, table in self.boxes.items():
            if len(table) != self.base.size or any(x < 0 or x >= self.base.size for x in table):
                raise ValueError(f"box {b} is not a total table on the algebra")
        return self

    @property
    def is_full(self) -> bool:
        return len(self.index_set) == self.base.size

    def box(self, b: int, a: int) -> int:
        return self.boxes[b][a]


def to_mma(alg: CondAlg) -> MMAlg:
    """``□_a(b) := a⇀b`` over the whole algebra."""
    require_CA(alg, "to_mma")
    return MMAlg(
        base=alg.base,
        index_set=tuple(alg.base.elements()),
        boxes={a: alg.cond[a] for a in alg.base.elements()},
    )


def to_conditional(m: MMAlg) -> CondAlg:
    """``a⇀b := □_a(b)`` for a full family."""
    if not m.is_full:
        raise InputError("to_conditional requires a full family of boxes")
    verdict = check_mma_axioms(m)
    if not verdict.holds:
        raise InputError(f"box family violates {verdict.details.get('axiom')} at {verdict.counterexample}")
    return CondAlg(base=m.base, cond=[m.boxes[a] for a in m.base.elements()])


def _m3_star_violation(m: MMAlg):
    for b1, b2 in product(m.index_set, repeat=2):
        if b1 & b2 != b1:
            continue
        for a in m.base.elements():
            lower, upper = m.boxes[b2][a], m.boxes[b1][a]
            if lower & upper != lower:
                return {"b1": b1, "b2": b2, "a": a}
    return None


def check_mma_axioms(m: MMAlg) -> Verdict:
    """M1 and M2 for every box, M3 for every pair, and M3* alongside M3."""
    elements = m.base.elements()
    top = m.base.top
    for b in m.index_set:
        if m.boxes[b][top] != top:
            return Verdict.fail("MMA", {"b": b}, axiom=AxiomId.M1.value)
    for b in m.index_set:
        box = m.boxes[b]
        for a, c in product(elements, repeat=2):
            if box[a & c] != box[a] & box[c]:
                return Verdict.fail("MMA", {"b": b, "a": a, "c": c}, axiom=AxiomId.M2.value)
    m3 = None
    for b1, b2 in product(m.index_set, repeat=2):
        for a in elements:
            lhs = m.boxes[b1 | b2][a]
            rhs = m.boxes[b1][a] & m.boxes[b2][a]
            if lhs & rhs != lhs:
                m3 = {"b1": b1, "b2": b2, "a": a}
                break
        if m3 is not None:
            break
    m3_star = _m3_star_violation(m)
    if (m3 is None) != (m3_star is None):
        raise ContractError(f"M3 and M3* disagree: M3 {m3}, M3* {m3_star}")
    if m3 is not None:
        return Verdict.fail("MMA", m3, axiom=AxiomId.M3.value)
    return Verdict.ok("MMA")


def q_relation(m: MMAlg, b: int) -> Tuple[int, ...]:
    """``Q_b(u)`` for every ultrafilter u, as masks: Q_b(u,v) iff atom_v lies
    below every x with □_b(x) ∈ u."""
    if b not in m.boxes:
        raise InputError(f"{b} is not in the index set")
    box = m.boxes[b]
    successors = []
    for u in range(m.base.atom_count):
        bound = m.base.top
        for x in m.base.elements():
            if box[x] >> u & 1:
                bound &= x
        successors.append(bound)
    return tuple(successors)


def q_box(m: MMAlg, b: int) -> Tuple[int, ...]:
    """``[Q_b](V) = {u : Q_b(u) ⊆ V}`` as a table over V."""
    successors = q_relation(m, b)
    table = []
    for v in m.base.elements():
        value = 0
        for u, image in enumerate(successors):
            if image & ~v == 0:
                value |= 1 << u
        table.append(value)
    return tuple(table)


def em_mma(m: MMAlg) -> MMAlg:
    """Canonical extension: boxes ``[Q_b]`` on sets of ultrafilters, indexed
    by φ[B]."""
    return MMAlg(
        base=m.base,
        index_set=m.index_set,
        boxes={b: q_box(m, b) for b in m.index_set},
    )


def mma_roundtrip_check(alg: CondAlg) -> Verdict:
    """``to_conditional(to_mma(A)) = A``, and the canonical extension of the
    box family agrees with the boxes on φ-images."""
    m = to_mma(alg)
    difference = table_difference(to_conditional(m).cond, alg.cond)
    if difference is not None:
        return Verdict.fail("mma_roundtrip", difference, property="to_conditional")
    extended = em_mma(m)
    for b in m.index_set:
        for a in m.base.elements():
            if extended.boxes[b][a] != m.boxes[b][a]:
                return Verdict.fail("mma_roundtrip", {"b": b, "a": a}, property="em_mma")
    return Verdict.ok("mma_roundtrip")


def q_monotonicity_check(alg: CondAlg) -> Verdict:
    """Boxes are antitone in the index, so ``b ≤ c`` implies
    ``Q_b(u) ⊆ Q_c(u)`` for every ultrafilter u."""
    m = to_mma(alg)
    relations = {b: q_relation(m, b) for b in m.index_set}
    for b, c in product(m.index_set, repeat=2):
        if b & c != b:
            continue
        for u in range(m.base.atom_count):
            if relations[b][u] & ~relations[c][u]:
                return Verdict.fail("q_monotonicity", {"b": b, "c": c, "u": u})
    return Verdict.ok("q_monotonicity")


def mma_embedding_check(m: MMAlg) -> Verdict:
    """``φ(□_b(a)) = [Q_b](φ(a))``"""
    for b in m.index_set:
        extended = q_box(m, b)
        for a in m.base.elements():
            if m.boxes[b][a] != extended[a]:
                return Verdict.fail("mma_embedding", {"b": b, "a": a})
    return Verdict.ok("mma_embedding")


def box_injectivity_check(m: MMAlg) -> Verdict:
    """Distinct boxes have distinct canonical extensions."""
    extended = {b: q_box(m, b) for b in m.index_set}
    for b, c in product(m.index_set, repeat=2):
        if m.boxes[b] != m.boxes[c] and extended[b] == extended[c]:
            return Verdict.fail("box_injectivity", {"b": b, "c": c})
    return Verdict.ok("box_injectivity")


def qa_equals_box_phi_check(alg: CondAlg) -> Verdict:
    """``[Q_a](V) = φ(a) ⇀ V`` in the canonical extension, and every □_U
    is recovered from the [Q_a] by intersecting over closed Y ⊆ U and open
    O ⊇ V the union of [Q_a](O) for a ∈ F_Y."""
    require_CA(alg, "qa_equals_box_phi_check")
    m = to_mma(alg)
    extension = cm(ultrafilter_frame(alg))
    q_boxes = {a: q_box(m, a) for a in alg.base.elements()}
    for a in alg.base.elements():
        for v in alg.base.elements():
            if q_boxes[a][v] != extension.cond[a][v]:
                return Verdict.fail("qa_equals_box_phi", {"a": a, "V": v}, part=1)
    top = alg.top
    for u in alg.base.elements():
        for v in alg.base.elements():
            value = top
            for y in submasks(u):
                for o in supermasks(v, top):
                    union = 0
                    for a in supermasks(y, top):
                        union |= q_boxes[a][o]
                    value &= union
            if value != extension.cond[u][v]:
                return Verdict.fail("qa_equals_box_phi", {"U": u, "V": v}, part=2)
    return Verdict.ok("qa_equals_box_phi")


def box_d_bridge_check(alg: CondAlg) -> Verdict:
    """C3 holds iff ``D_F(↑a) ⊆ □_a⁻¹[F]`` for every a and filter F; in CA
    the two sets coincide and ``D_F(H)`` is the union of □_a⁻¹[F] over a ∈ H."""
    base, t = alg.base, alg.cond
    ups = [up_set(base, g) for g in base.elements()]
    inclusion = None
    for a in base.elements():
        for f in base.elements():
            preimage = frozenset(b for b in base.elements() if t[a][b] & f == f)
            if not d_set(alg, ups[f], ups[a]) <= preimage:
                inclusion = {"a": a, "F": f}
                break
        if inclusion is not None:
            break
    c3 = check_axiom(alg, AxiomId.C3).holds
    if c3 != (inclusion is None):
        counterexample = inclusion or check_axiom(alg, AxiomId.C3).counterexample
        return Verdict.fail("box_d_bridge", counterexample, property="c3_iff_inclusion", c3=c3)
    if not check_axiom(alg, AxiomId.C1).holds or not check_axiom(alg, AxiomId.C2).holds or not c3:
        return Verdict.ok("box_d_bridge", c3=c3)
    for f in base.elements():
        for a in base.elements():
            preimage = frozenset(b for b in base.elements() if t[a][b] & f == f)
            if d_set(alg, ups[f], ups[a]) != preimage:
                return Verdict.fail("box_d_bridge", {"a": a, "F": f}, property="equality")
    for h in base.elements():
        for f in base.elements():
            union = set()
            for a in ups[h]:
                union.update(b for b in base.elements() if t[a][b] & f == f)
            if d_set(alg, ups[f], ups[h]) != frozenset(union):
                return Verdict.fail("box_d_bridge", {"H": h, "F": f}, property="union")
    return Verdict.ok("box_d_bridge", c3=c3)
