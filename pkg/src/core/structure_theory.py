"""
Subalgebras through C-equivalences of the dual space, and congruences
through T-closed sets.
"""
from itertools import product
from typing import FrozenSet, Iterator, List, Optional, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.core.boolean_core import FinBoolAlg, UfSet, submasks
from src.core.conditional_algebra import CondAlg, require_CA
from src.core.duality import ultrafilter_frame
from src.core.errors import ContractError
from src.core.hybrid_frames import TFrame, is_upward_closed
from src.core.models import Verdict
from src.core.multimodal import is_boolean_subalgebra

logger = structlog.get_logger(__name__)


def set_partitions(count: int) -> Iterator[Tuple[int, ...]]:
    """Partitions of ``range(count)`` as tuples of block masks, enumerated
    by restricted growth strings."""
    if count == 0:
        yield ()
        return
    labels = [0] * count

    def extend(position: int, highest: int):
        if position == count:
            blocks = [0] * (highest + 1)
            for index, label in enumerate(labels):
                blocks[label] |= 1 << index
            yield tuple(blocks)
            return
        for label in range(highest + 2):
            labels[position] = label
            yield from extend(position + 1, max(highest, label))

    labels[0] = 0
    yield from extend(1, 0)


class BoolEquiv(BaseModel):
    """An equivalence on ultrafilter indices, stored as block masks."""

    model_config = ConfigDict(frozen=True)

    point_count: int
    blocks: Tuple[int, ...]

    @field_validator("blocks", mode="before")
    @classmethod
    def _canonical(cls, value):
        return tuple(sorted(value))

    @model_validator(mode="after")
    def _check_partition(self) -> "BoolEquiv":
        seen = 0
        for block in self.blocks:
            if block == 0:
                raise ValueError("blocks must be nonempty")
            if block & seen:
                raise ValueError("blocks must be disjoint")
            seen |= block
        if seen != (1 << self.point_count) - 1:
            raise ValueError("blocks must cover every point")
        return self

    @classmethod
    def identity(cls, point_count: int) -> "BoolEquiv":
        return cls(point_count=point_count, blocks=[1 << p for p in range(point_count)])

    def block_of(self, point: int) -> int:
        for block in self.blocks:
            if block >> point & 1:
                return block
        raise ValueError(f"point {point} is not covered")

    def related(self, x: int, y: int) -> bool:
        return bool(self.block_of(x) >> y & 1)

    def saturation(self, mask: int) -> int:
        """``E(U)``: the union of the blocks meeting ``mask``."""
        result = 0
        for block in self.blocks:
            if block & mask:
                result |= block
        return result

    def refines(self, other: "BoolEquiv") -> bool:
        return all(any(block & big == block for big in other.blocks) for block in self.blocks)


class SubalgRef(BaseModel):
    """Domain of a Boolean subalgebra."""

    model_config = ConfigDict(frozen=True)

    base: FinBoolAlg
    elements: Tuple[int, ...]

    @field_validator("elements", mode="before")
    @classmethod
    def _sorted(cls, value):
        return tuple(sorted(set(value)))

    @model_validator(mode="after")
    def _check_closed(self) -> "SubalgRef":
        if not is_boolean_subalgebra(self.base, self.elements):
            raise ValueError("elements are not closed under the Boolean operations")
        return self


class CongruenceRef(BaseModel):
    """The congruence θ(Y) induced by a set of ultrafilters."""

    model_config = ConfigDict(frozen=True)

    base: FinBoolAlg
    Y: UfSet


def _unions_of_blocks(blocks: Tuple[int, ...]) -> List[int]:
    return [
        sum(block for bit, block in enumerate(blocks) if choice >> bit & 1)
        for choice in range(1 << len(blocks))
    ]


def enumerate_subalgebras(alg: CondAlg) -> List[SubalgRef]:
    """One Boolean subalgebra per partition of the atoms: its elements are
    the unions of blocks."""
    return [
        SubalgRef(base=alg.base, elements=_unions_of_blocks(blocks))
        for blocks in set_partitions(alg.atom_count)
    ]


def is_closed_under_cond(alg: CondAlg, B: SubalgRef) -> bool:
    members = set(B.elements)
    return all(alg.cond[a][b] in members for a in B.elements for b in B.elements)


def preceq_E(E: BoolEquiv, Y: UfSet, C: UfSet) -> bool:
    """Every point of Y is E-related to some point of C."""
    return Y.mask & ~E.saturation(C.mask) == 0


def equivalence_of_subalgebra(B: SubalgRef) -> BoolEquiv:
    """``E_B``: u ~ v iff u and v contain the same elements of B."""
    traces = {}
    for u in range(B.base.atom_count):
        trace = tuple(b >> u & 1 for b in B.elements)
        traces[trace] = traces.get(trace, 0) | 1 << u
    return BoolEquiv(point_count=B.base.atom_count, blocks=list(traces.values()))


def subalgebra_of_equivalence(E: BoolEquiv) -> SubalgRef:
    """``B_E``: the sets closed under E."""
    return SubalgRef(base=FinBoolAlg(atom_count=E.point_count), elements=_unions_of_blocks(E.blocks))


def _reach(f: TFrame) -> List[List[int]]:
    size = f.full + 1
    reach = []
    for x in range(f.point_count):
        row = []
        for s in range(size):
            acc = 0
            for c in submasks(s):
                acc |= f.image[x][c]
            row.append(acc)
        reach.append(row)
    return reach


def _c_equivalence_violation(f: TFrame, E: BoolEquiv, reach: List[List[int]]) -> Optional[dict]:
    m = f.point_count
    for x, x_prime, y in product(range(m), repeat=3):
        if not E.related(x, y):
            continue
        targets = E.block_of(x_prime)
        for Y in range(f.full + 1):
            if not f.related(x, Y, x_prime):
                continue
            # some C ⪯_E Y with T(y, C, y′) for y′ E-related to x′
            if reach[y][E.saturation(Y)] & targets == 0:
                return {"x": x, "x_prime": x_prime, "y": y, "Y": Y}
    return None


def is_c_equivalence(f: TFrame, E: BoolEquiv) -> Verdict:
    """E(x,y) and T(x,Y,x′) give y′ E-related to x′ and C ⪯_E Y with T(y,C,y′)."""
    if not is_upward_closed(f):
        raise ContractError("is_c_equivalence requires a conditional space")
    if E.point_count != f.point_count:
        raise ContractError("equivalence and frame have different point counts")
    counterexample = _c_equivalence_violation(f, E, _reach(f))
    if counterexample is None:
        return Verdict.ok("c_equivalence")
    return Verdict.fail("c_equivalence", counterexample)


def c_equivalences(f: TFrame) -> List[BoolEquiv]:
    if not is_upward_closed(f):
        raise ContractError("c_equivalences requires a conditional space")
    reach = _reach(f)
    found = []
    for blocks in set_partitions(f.point_count):
        E = BoolEquiv(point_count=f.point_count, blocks=blocks)
        if _c_equivalence_violation(f, E, reach) is None:
            found.append(E)
    return found


def subalgebra_duality_check(alg: CondAlg) -> Verdict:
    """B is ⇀-closed iff E_B is a C-equivalence; on closed subalgebras
    inclusion reverses into refinement, and every C-equivalence is some E_B."""
    require_CA(alg, "subalgebra_duality_check")
    frame = ultrafilter_frame(alg)
    closed: List[Tuple[SubalgRef, BoolEquiv]] = []
    for B in enumerate_subalgebras(alg):
        E = equivalence_of_subalgebra(B)
        is_closed = is_closed_under_cond(alg, B)
        if is_closed != is_c_equivalence(frame, E).holds:
            return Verdict.fail("subalgebra_duality", {"B": list(B.elements)}, closed=is_closed)
        if is_closed:
            closed.append((B, E))
    for (B1, E1), (B2, E2) in product(closed, repeat=2):
        if (set(B1.elements) <= set(B2.elements)) != E2.refines(E1):
            return Verdict.fail(
                "subalgebra_duality", {"B1": list(B1.elements), "B2": list(B2.elements)}, property="order"
            )
    dual = sorted(E.blocks for E in c_equivalences(frame))
    expected = sorted(E.blocks for _, E in closed)
    if dual != expected:
        unmatched = sorted(set(dual) ^ set(expected))
        return Verdict.fail("subalgebra_duality", {"blocks": list(unmatched[0])}, property="bijection")
    return Verdict.ok("subalgebra_duality", closed_subalgebras=len(closed))


def preceq_filter_lemma_check(alg: CondAlg) -> Verdict:
    """φ(F) ⪯_{E_B} φ(H) iff H ∩ B ⊆ F, over subalgebras and principal filters."""
    base = alg.base
    for B in enumerate_subalgebras(alg):
        E = equivalence_of_subalgebra(B)
        for f, h in product(base.elements(), repeat=2):
            lhs = preceq_E(E, UfSet(mask=f), UfSet(mask=h))
            rhs = all(b & f == f for b in B.elements if b & h == h)
            if lhs != rhs:
                return Verdict.fail("preceq_filter_lemma", {"B": list(B.elements), "F": f, "H": h})
    return Verdict.ok("preceq_filter_lemma")


def minimal_witnesses(f: TFrame, x: int, y: int) -> List[UfSet]:
    """The ⊆-minimal members of C(x,y) = {Z : T(x,Z,y)}."""
    witnesses = [z for z in range(f.full + 1) if f.related(x, z, y)]
    minimal = [z for z in witnesses if not any(w != z and w & z == w for w in witnesses)]
    return [UfSet(mask=z) for z in minimal]


def is_t_closed(f: TFrame, Y: UfSet) -> bool:
    """For x ∈ Y and Z minimal in C(x,y): Z ⊆ Y and y ∈ Y. An empty C(x,y)
    imposes nothing."""
    for x in range(f.point_count):
        if not Y.mask >> x & 1:
            continue
        for y in range(f.point_count):
            for z in minimal_witnesses(f, x, y):
                if z.mask & ~Y.mask or not Y.mask >> y & 1:
                    return False
    return True


def theta(alg: CondAlg, Y: UfSet) -> FrozenSet[Tuple[int, int]]:
    """``θ(Y) = {(a,b) : Y ∩ φ(a) = Y ∩ φ(b)}``"""
    y = Y.mask
    return frozenset((a, b) for a, b in product(alg.base.elements(), repeat=2) if a & y == b & y)


def compatibility_violation(alg: CondAlg, pairs: FrozenSet[Tuple[int, int]]) -> Optional[dict]:
    t = alg.cond
    ordered = sorted(pairs)
    for a, b in ordered:
        for c, d in ordered:
            if (t[a][c], t[b][d]) not in pairs:
                return {"a": a, "b": b, "c": c, "d": d}
    return None


def is_compatible(alg: CondAlg, pairs: FrozenSet[Tuple[int, int]]) -> bool:
    return compatibility_violation(alg, pairs) is None


def congruences(alg: CondAlg) -> List[CongruenceRef]:
    """Every conditional congruence, as the set Y inducing it."""
    return [
        CongruenceRef(base=alg.base, Y=UfSet(mask=y))
        for y in alg.base.elements()
        if is_compatible(alg, theta(alg, UfSet(mask=y)))
    ]


def congruence_duality_check(alg: CondAlg) -> Verdict:
    """θ(Y) is a congruence iff Y is T-closed; the map Y ↦ θ(Y) is injective
    and reverses inclusion on T-closed sets."""
    require_CA(alg, "congruence_duality_check")
    frame = ultrafilter_frame(alg)
    thetas = {}
    closed_sets = []
    for y in alg.base.elements():
        pairs = theta(alg, UfSet(mask=y))
        violation = compatibility_violation(alg, pairs)
        t_closed = is_t_closed(frame, UfSet(mask=y))
        if (violation is None) != t_closed:
            return Verdict.fail("congruence_duality", {"Y": y}, t_closed=t_closed, compatibility=violation)
        thetas[y] = pairs
        if t_closed:
            closed_sets.append(y)
    first_with_theta = {}
    for y, pairs in thetas.items():
        if pairs in first_with_theta:
            return Verdict.fail("congruence_duality", {"Y1": first_with_theta[pairs], "Y2": y}, property="injective")
        first_with_theta[pairs] = y
    for y1, y2 in product(closed_sets, repeat=2):
        if (y1 & y2 == y1) != (thetas[y2] <= thetas[y1]):
            return Verdict.fail("congruence_duality", {"Y1": y1, "Y2": y2}, property="order")
    found = sorted(c.Y.mask for c in congruences(alg))
    if found != closed_sets:
        unmatched = sorted(set(found) ^ set(closed_sets))
        return Verdict.fail("congruence_duality", {"Y": unmatched[0]}, property="bijection")
    return Verdict.ok("congruence_duality", t_closed_sets=closed_sets)


def theta_meet_witness_check(alg: CondAlg) -> Verdict:
    """For (a,b) ∈ θ(Y), x = ⋀F_Y satisfies a∧x = b∧x."""
    for y in alg.base.elements():
        # the meet of F_Y is the join of the atoms of Y
        x = y
        for a, b in theta(alg, UfSet(mask=y)):
            if a & x != b & x:
                return Verdict.fail("theta_meet_witness", {"Y": y, "a": a, "b": b})
    return Verdict.ok("theta_meet_witness")
