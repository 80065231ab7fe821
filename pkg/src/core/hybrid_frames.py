"""
Ternary hybrid frames: a finite point set with a relation T ⊆ X × P(X) × X,
the middle coordinate encoded as a subset mask.

Finite spaces are discrete, so closed, open and clopen sets are all subsets;
wherever the theory quantifies over closed or clopen sets the code ranges over
every mask.
"""
from functools import cached_property
from typing import List, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.boolean_core import MAX_ATOMS, FinBoolAlg, submasks, supermasks
from src.core.conditional_algebra import CondAlg, table_difference
from src.core.errors import ContractError
from src.core.models import Verdict

logger = structlog.get_logger(__name__)

Triple = Tuple[int, int, int]


class TFrame(BaseModel):
    """Points ``0..point_count-1`` and a canonically sorted triple set."""

    model_config = ConfigDict(frozen=True)

    point_count: int = Field(ge=0, le=MAX_ATOMS)
    triples: Tuple[Triple, ...] = ()

    @field_validator("triples", mode="before")
    @classmethod
    def _canonical(cls, value):
        return tuple(sorted({tuple(t) for t in value}))

    @model_validator(mode="after")
    def _check_range(self) -> "TFrame":
        m = self.point_count
        for x, z, y in self.triples:
            if not (0 <= x < m and 0 <= y < m):
                raise ValueError(f"triple ({x}, {z}, {y}) has a point outside [0, {m})")
            if not 0 <= z < 1 << m:
                raise ValueError(f"triple ({x}, {z}, {y}) has a middle set outside [0, {1 << m})")
        return self

    @property
    def full(self) -> int:
        return (1 << self.point_count) - 1

    @cached_property
    def image(self) -> Tuple[Tuple[int, ...], ...]:
        """``image[x][Z]`` is the mask of ``T(x, Z)``."""
        table = [[0] * (1 << self.point_count) for _ in range(self.point_count)]
        for x, z, y in self.triples:
            table[x][z] |= 1 << y
        return tuple(tuple(row) for row in table)

    def related(self, x: int, z: int, y: int) -> bool:
        return bool(self.image[x][z] >> y & 1)


def t_image(f: TFrame, x: int, Z: int) -> int:
    return f.image[x][Z]


def upward_closure(f: TFrame) -> TFrame:
    """Least frame containing ``f`` that is closed under supersets in the
    middle coordinate."""
    closed = {(x, u, y) for x, z, y in f.triples for u in supermasks(z, f.full)}
    return TFrame(point_count=f.point_count, triples=closed)


def is_upward_closed(f: TFrame) -> bool:
    return _first_unclosed(f) is None


def _first_unclosed(f: TFrame):
    for x, z, y in f.triples:
        for u in supermasks(z, f.full):
            if not f.related(x, u, y):
                return {"x": x, "Z": z, "y": y, "U": u}
    return None


def cm(f: TFrame) -> CondAlg:
    """Full complex algebra: ``U ⇀ V = {x : T(x, Z) ⊆ V for all Z ⊆ U}``."""
    m, size = f.point_count, 1 << f.point_count
    image = f.image
    # reach[x][U] = union of T(x, Z) over Z ⊆ U
    reach = [[0] * size for _ in range(m)]
    for x in range(m):
        row = reach[x]
        for u in range(size):
            acc = 0
            for z in submasks(u):
                acc |= image[x][z]
            row[u] = acc
    table = [[0] * size for _ in range(size)]
    for u in range(size):
        for v in range(size):
            result = 0
            for x in range(m):
                if reach[x][u] & ~v == 0:
                    result |= 1 << x
            table[u][v] = result
    if is_upward_closed(f):
        for u in range(size):
            for v in range(size):
                simple = 0
                for x in range(m):
                    if image[x][u] & ~v == 0:
                        simple |= 1 << x
                if simple != table[u][v]:
                    raise ContractError(f"simple and general complex operators differ at U={u}, V={v}")
    logger.debug("Complex algebra built", points=m, triples=len(f.triples))
    return CondAlg(base=FinBoolAlg(atom_count=m), cond=table)


def check_conditional_space(f: TFrame) -> Verdict:
    """T1 and T2 hold in every finite discrete space; T3 reduces to the
    relation being upward closed."""
    counterexample = _first_unclosed(f)
    if counterexample is None:
        return Verdict.ok("conditional_space")
    return Verdict.fail("conditional_space", counterexample)


def literal_t3_check(f: TFrame) -> Verdict:
    """T(x,Y,y) iff T(x,U,y) for every U ⊇ Y, read literally."""
    for x in range(f.point_count):
        for y in range(f.point_count):
            for z in range(f.full + 1):
                every_superset = all(f.related(x, u, y) for u in supermasks(z, f.full))
                if f.related(x, z, y) != every_superset:
                    return Verdict.fail("T3", {"x": x, "Y": z, "y": y})
    return Verdict.ok("T3")


def t_prime_relation(alg: CondAlg) -> TFrame:
    """``T′(u,Z,v)`` iff every a in ⋂Z and every b with a⇀b ∈ u has b ∈ v.

    The elements lying in every ultrafilter of Z are those above the join
    of the atoms of Z.
    """
    n, size = alg.atom_count, alg.size
    t = alg.cond
    triples: List[Triple] = []
    for u in range(n):
        for z in range(size):
            consequents = alg.top
            for a in range(size):
                if a & z != z:
                    continue
                for b in range(size):
                    if t[a][b] >> u & 1:
                        consequents &= b
            for v in range(n):
                if consequents >> v & 1:
                    triples.append((u, z, v))
    return TFrame(point_count=n, triples=triples)


def frame_representation_check(f: TFrame) -> Verdict:
    """Embed a frame into the ultrafilter frame of its powerset algebra.

    Ultrafilters of P(X) are the principal ones, so the standard map sends
    point x to the ultrafilter of atom x and e[Z] to the mask Z itself. The
    relation T′ over P(X) with the complex operator of the upward closure
    must agree with the upward closure of T, which contains T.
    """
    closure = upward_closure(f)
    algebra = cm(closure)
    difference = table_difference(algebra.cond, cm(f).cond)
    if difference is not None:
        return Verdict.fail("frame_representation", difference, property="same_complex_algebra")
    prime = t_prime_relation(algebra)
    for x in range(f.point_count):
        for z in range(f.full + 1):
            for y in range(f.point_count):
                if closure.related(x, z, y) != prime.related(x, z, y):
                    return Verdict.fail("frame_representation", {"x": x, "Z": z, "y": y}, property="embedding")
                if f.related(x, z, y) and not closure.related(x, z, y):
                    return Verdict.fail("frame_representation", {"x": x, "Z": z, "y": y}, property="extensive")
    return Verdict.ok("frame_representation")

