"""
π- and σ-extensions of the conditional operator to sets of ultrafilters.

Both are evaluated from their defining formulas over every closed and open
set (all masks in the discrete case), with ideals and filters taken by
their generators. The transported operator U,V ↦ φ(a_U ⇀ a_V) is kept only
as an oracle.
"""
from typing import List, Tuple

import structlog
from pydantic import BaseModel, ConfigDict

from src.core.boolean_core import (
    Filter, Ideal, UfSet, filter_of_set, ideal_of_open, neg_ideal, submasks, supermasks,
)
from src.core.conditional_algebra import CondAlg, check_CA, require_CA
from src.core.errors import ContractError
from src.core.models import Verdict

logger = structlog.get_logger(__name__)


class GTriple(BaseModel):
    """``G(u, Z, Y)`` with the ideal and filter generators witnessing it."""

    model_config = ConfigDict(frozen=True)

    u: int
    Z: int
    Y: int
    ideal_generator: int
    filter_generator: int


def _pi_value(alg: CondAlg, u_mask: int, v_mask: int) -> int:
    base, t = alg.base, alg.cond
    result = base.top
    for y in submasks(u_mask):
        fy = filter_of_set(base, UfSet(mask=y)).generator
        for o in supermasks(v_mask, base.top):
            io = ideal_of_open(base, UfSet(mask=o)).generator
            union = 0
            for a in supermasks(fy, base.top):
                row = t[a]
                for b in submasks(io):
                    union |= row[b]
            result &= union
    return result


def pi_extend(alg: CondAlg, U: UfSet, V: UfSet) -> UfSet:
    """Intersection over closed Y ⊆ U and open O ⊇ V of the union of
    φ(a⇀b) over a ∈ F_Y, b ∈ I_O."""
    require_CA(alg, "pi_extend")
    alg.base.check_element(U.mask, "U")
    alg.base.check_element(V.mask, "V")
    return UfSet(mask=_pi_value(alg, U.mask, V.mask))


def _first_stage(alg: CondAlg, ideal: Ideal, filter_: Filter) -> int:
    """``Z^c ⇀σ Y`` for Z = φ(¬I), Y = φ(F): the intersection of φ(a⇀b)
    over I × F."""
    base, t = alg.base, alg.cond
    result = base.top
    for a in submasks(ideal.generator):
        row = t[a]
        for b in supermasks(filter_.generator, base.top):
            result &= row[b]
    return result


def _sigma_two_stage(alg: CondAlg, u_mask: int, v_mask: int) -> int:
    base = alg.base
    result = 0
    # open supersets Z^c of U and closed subsets Y of V
    for open_set in supermasks(u_mask, base.top):
        ideal = Ideal(generator=open_set)
        for y in submasks(v_mask):
            result |= _first_stage(alg, ideal, Filter(generator=y))
    return result


def g_relation(alg: CondAlg) -> List[GTriple]:
    """``G(u,Z,Y)`` iff some ideal I and filter F with Z = φ(¬I), Y = φ(F)
    have every a⇀b (a ∈ I, b ∈ F) in u."""
    require_CA(alg, "g_relation")
    base, t = alg.base, alg.cond
    triples = []
    for g in base.elements():
        ideal = Ideal(generator=g)
        z = neg_ideal(base, ideal).generator
        for f in base.elements():
            product_meet = _first_stage(alg, ideal, Filter(generator=f))
            for u in range(alg.atom_count):
                if product_meet >> u & 1:
                    triples.append(GTriple(u=u, Z=z, Y=f, ideal_generator=g, filter_generator=f))
    return triples


def _g_pairs(alg: CondAlg) -> List[List[Tuple[int, int]]]:
    pairs: List[List[Tuple[int, int]]] = [[] for _ in range(alg.atom_count)]
    for triple in g_relation(alg):
        pairs[triple.u].append((triple.Z, triple.Y))
    return pairs


def _sigma_from_g(pairs: List[List[Tuple[int, int]]], u_mask: int, v_mask: int) -> int:
    result = 0
    for u, members in enumerate(pairs):
        if any(z & u_mask == 0 and y & ~v_mask == 0 for z, y in members):
            result |= 1 << u
    return result


def sigma_extend(alg: CondAlg, U: UfSet, V: UfSet) -> UfSet:
    """Two-stage σ-extension, cross-checked against the G-relation form."""
    require_CA(alg, "sigma_extend")
    alg.base.check_element(U.mask, "U")
    alg.base.check_element(V.mask, "V")
    staged = _sigma_two_stage(alg, U.mask, V.mask)
    via_g = _sigma_from_g(_g_pairs(alg), U.mask, V.mask)
    if staged != via_g:
        raise ContractError(f"σ-extension formulations differ at U={U.mask}, V={V.mask}: {staged} vs {via_g}")
    return UfSet(mask=staged)


def transported_operator(alg: CondAlg, U: UfSet, V: UfSet) -> UfSet:
    """``φ(a_U ⇀ a_V)`` where φ(a_U) = U."""
    return UfSet(mask=alg.cond[U.mask][V.mask])


def pi_table(alg: CondAlg) -> List[List[int]]:
    require_CA(alg, "pi_table")
    return [[_pi_value(alg, u, v) for v in alg.base.elements()] for u in alg.base.elements()]


def sigma_table(alg: CondAlg) -> List[List[int]]:
    require_CA(alg, "sigma_table")
    pairs = _g_pairs(alg)
    table = []
    for u in alg.base.elements():
        row = []
        for v in alg.base.elements():
            staged = _sigma_two_stage(alg, u, v)
            if staged != _sigma_from_g(pairs, u, v):
                raise ContractError(f"σ-extension formulations differ at U={u}, V={v}")
            row.append(staged)
        table.append(row)
    return table


def pi_algebra(alg: CondAlg) -> CondAlg:
    return CondAlg(base=alg.base, cond=pi_table(alg))


def sigma_algebra(alg: CondAlg) -> CondAlg:
    return CondAlg(base=alg.base, cond=sigma_table(alg))


def smoothness_check(alg: CondAlg) -> Verdict:
    """π and σ agree on every pair of ultrafilter sets."""
    pi, sigma = pi_table(alg), sigma_table(alg)
    for u in alg.base.elements():
        for v in alg.base.elements():
            if pi[u][v] != sigma[u][v]:
                return Verdict.fail("smoothness", {"U": u, "V": v}, pi=pi[u][v], sigma=sigma[u][v])
    return Verdict.ok("smoothness")


def finite_collapse_check(alg: CondAlg) -> Verdict:
    """π = σ = the transported operator, σ ⊆ π, and both extended algebras
    lie in CA."""
    pi, sigma = pi_table(alg), sigma_table(alg)
    t = alg.cond
    for u in alg.base.elements():
        for v in alg.base.elements():
            if sigma[u][v] & ~pi[u][v]:
                return Verdict.fail("finite_collapse", {"U": u, "V": v}, property="sigma_below_pi")
            if pi[u][v] != t[u][v]:
                return Verdict.fail("finite_collapse", {"U": u, "V": v}, property="pi_transported")
            if sigma[u][v] != t[u][v]:
                return Verdict.fail("finite_collapse", {"U": u, "V": v}, property="sigma_transported")
    for name, table in (("pi_closure", pi), ("sigma_closure", sigma)):
        verdict = check_CA(CondAlg(base=alg.base, cond=table))
        if not verdict.holds:
            return Verdict.fail("finite_collapse", verdict.counterexample, property=name)
    return Verdict.ok("finite_collapse")
