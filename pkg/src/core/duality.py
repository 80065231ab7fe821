"""
Ultrafilter frames, canonical extensions, the representation theorem, both
duality roundtrips, and the correspondence between conditional
homomorphisms and conditional functions.

Ultrafilter u of an algebra with n atoms is the atom index u, so a set of
ultrafilters is a mask and the Stone map is the identity on masks.
"""
from itertools import product
from typing import Dict, List, Optional, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.core.boolean_core import Filter, Ultrafilter, phi
from src.core.conditional_algebra import CondAlg, consequent_generator, d_filter, require_CA
from src.core.errors import ContractError
from src.core.hybrid_frames import TFrame, check_conditional_space, cm, t_prime_relation
from src.core.models import Verdict

logger = structlog.get_logger(__name__)


def is_boolean_map(source_size: int, target_size: int, table: Tuple[int, ...]) -> bool:
    source_top, target_top = source_size - 1, target_size - 1
    if table[0] != 0 or table[source_top] != target_top:
        return False
    for a in range(source_size):
        if table[a ^ source_top] != table[a] ^ target_top:
            return False
        for b in range(a + 1, source_size):
            if table[a & b] != table[a] & table[b] or table[a | b] != table[a] | table[b]:
                return False
    return True


class AlgHom(BaseModel):
    """A Boolean homomorphism between the reducts of two algebras."""

    model_config = ConfigDict(frozen=True)

    source: CondAlg
    target: CondAlg
    map: Tuple[int, ...]

    @field_validator("map", mode="before")
    @classmethod
    def _freeze(cls, value):
        return tuple(value)

    @model_validator(mode="after")
    def _check_boolean(self) -> "AlgHom":
        if len(self.map) != self.source.size:
            raise ValueError(f"map has {len(self.map)} entries, expected {self.source.size}")
        if any(v < 0 or v >= self.target.size for v in self.map):
            raise ValueError("map sends an element outside the target algebra")
        if not is_boolean_map(self.source.size, self.target.size, self.map):
            raise ValueError("map is not a Boolean homomorphism")
        return self

    def __call__(self, a: int) -> int:
        return self.map[a]


class FrameMap(BaseModel):
    """A total map between the points of two frames."""

    model_config = ConfigDict(frozen=True)

    source: TFrame
    target: TFrame
    map: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_total(self) -> "FrameMap":
        if len(self.map) != self.source.point_count:
            raise ValueError(f"map has {len(self.map)} entries, expected {self.source.point_count}")
        if any(p < 0 or p >= self.target.point_count for p in self.map):
            raise ValueError("map sends a point outside the target frame")
        return self

    def preimage(self, mask: int) -> int:
        result = 0
        for x, fx in enumerate(self.map):
            if mask >> fx & 1:
                result |= 1 << x
        return result


def ultrafilter_frame(alg: CondAlg) -> TFrame:
    """``T_A(u, φ(F), v)`` iff ``D_u(F) ⊆ v``, over all principal filters
    including the improper one."""
    require_CA(alg, "ultrafilter_frame")
    triples = []
    for u in range(alg.atom_count):
        for g in alg.base.elements():
            generator = consequent_generator(alg, u, g)
            for v in range(alg.atom_count):
                if generator >> v & 1:
                    triples.append((u, g, v))
    frame = TFrame(point_count=alg.atom_count, triples=triples)
    verdict = check_conditional_space(frame)
    if not verdict.holds:
        raise ContractError(f"ultrafilter frame is not upward closed at {verdict.counterexample}")
    logger.debug("Ultrafilter frame built", points=frame.point_count, triples=len(frame.triples))
    return frame


def em(alg: CondAlg) -> CondAlg:
    """Canonical extension: the complex algebra of the ultrafilter frame."""
    return cm(ultrafilter_frame(alg))


def representation_check(alg: CondAlg) -> Verdict:
    """φ is injective, Boolean, and carries ⇀ to the complex operator."""
    require_CA(alg, "representation_check")
    base = alg.base
    images = [phi(base, a).mask for a in base.elements()]
    first_with_image = {}
    for a, image in enumerate(images):
        if image in first_with_image:
            return Verdict.fail("representation", {"a": first_with_image[image], "b": a}, property="injective")
        first_with_image[image] = a
    for a in base.elements():
        if images[base.neg(a)] != images[a] ^ base.top:
            return Verdict.fail("representation", {"a": a}, property="complement")
        for b in base.elements():
            if images[a & b] != images[a] & images[b] or images[a | b] != images[a] | images[b]:
                return Verdict.fail("representation", {"a": a, "b": b}, property="lattice")
    extension = em(alg)
    for a in base.elements():
        for b in base.elements():
            if images[alg.cond[a][b]] != extension.cond[images[a]][images[b]]:
                return Verdict.fail("representation", {"a": a, "b": b}, property="conditional")
    return Verdict.ok("representation")


def co_es_roundtrip(alg: CondAlg) -> Verdict:
    """The clopen algebra of the dual space is isomorphic to the algebra via φ."""
    require_CA(alg, "co_es_roundtrip")
    recovered = em(alg)
    if recovered.atom_count != alg.atom_count:
        return Verdict.fail("co_es_roundtrip", {"atoms": recovered.atom_count}, property="bijection")
    for a in alg.base.elements():
        for b in alg.base.elements():
            if recovered.cond[a][b] != alg.cond[a][b]:
                return Verdict.fail("co_es_roundtrip", {"a": a, "b": b}, property="conditional")
    return Verdict.ok("co_es_roundtrip")


def es_co_roundtrip(f: TFrame) -> Verdict:
    """The dual space of the clopen algebra is isomorphic to the space via ε.

    Ultrafilters of P(X) are principal, so ε sends point x to atom x.
    """
    space = check_conditional_space(f)
    if not space.holds:
        raise ContractError(f"es_co_roundtrip requires a conditional space; T3 fails at {space.counterexample}")
    recovered = ultrafilter_frame(cm(f))
    if recovered.point_count != f.point_count:
        return Verdict.fail("es_co_roundtrip", {"points": recovered.point_count}, property="bijection")
    for x in range(f.point_count):
        for z in range(f.full + 1):
            for y in range(f.point_count):
                if f.related(x, z, y) != recovered.related(x, z, y):
                    return Verdict.fail("es_co_roundtrip", {"x": x, "Z": z, "y": y}, property="relation")
    return Verdict.ok("es_co_roundtrip")


def t_prime_restriction_check(alg: CondAlg) -> Verdict:
    """T′ restricted to closed middle sets is the ultrafilter-frame relation."""
    prime = t_prime_relation(alg)
    frame = ultrafilter_frame(alg)
    if prime.triples != frame.triples:
        u, z, v = sorted(set(prime.triples) ^ set(frame.triples))[0]
        return Verdict.fail("t_prime_restriction", {"u": u, "Z": z, "v": v})
    return Verdict.ok("t_prime_restriction")


def t_image_identity_check(alg: CondAlg) -> Verdict:
    """``T_A(u, φ(F)) = φ(D_u(F))`` with D computed as a set."""
    frame = ultrafilter_frame(alg)
    for u in range(alg.atom_count):
        for g in alg.base.elements():
            consequents = d_filter(alg, Ultrafilter(atom_index=u), Filter(generator=g))
            if frame.image[u][g] != consequents.generator:
                return Verdict.fail("t_image_identity", {"u": u, "F": g})
    return Verdict.ok("t_image_identity")


def existence_lemma_check(alg: CondAlg) -> Verdict:
    """``a⇀b ∈ u`` iff ``b ∈ D_u(F)`` for every filter F containing a."""
    require_CA(alg, "existence_lemma_check")
    t = alg.cond
    for u in range(alg.atom_count):
        generators = [consequent_generator(alg, u, g) for g in alg.base.elements()]
        for a in alg.base.elements():
            for b in alg.base.elements():
                lhs = bool(t[a][b] >> u & 1)
                # ↑g contains a iff g ≤ a
                rhs = all(generators[g] & b == generators[g] for g in alg.base.elements() if g & a == g)
                if lhs != rhs:
                    return Verdict.fail("existence_lemma", {"u": u, "a": a, "b": b})
    return Verdict.ok("existence_lemma")


def boolean_homs(source: CondAlg, target: CondAlg) -> List[AlgHom]:
    """Every Boolean homomorphism source → target, one per point map
    Ul(target) → Ul(source)."""
    homs = []
    for points in product(range(source.atom_count), repeat=target.atom_count):
        table = []
        for a in source.base.elements():
            image = 0
            for u, p in enumerate(points):
                if a >> p & 1:
                    image |= 1 << u
            table.append(image)
        homs.append(AlgHom(source=source, target=target, map=table))
    return homs


def boolean_maps_by_enumeration(source: CondAlg, target: CondAlg) -> List[Tuple[int, ...]]:
    """All self-consistent Boolean maps found by scanning every function."""
    found = []
    for table in product(range(target.size), repeat=source.size):
        if is_boolean_map(source.size, target.size, table):
            found.append(table)
    return found


def dual_map(h: AlgHom) -> FrameMap:
    """``f_h(u) = h⁻¹[u]`` from the dual of the target to the dual of the source."""
    points = []
    for u in range(h.target.atom_count):
        preimage = [k for k in range(h.source.atom_count) if h.map[1 << k] >> u & 1]
        points.append(preimage[0])
    return FrameMap(source=ultrafilter_frame(h.target), target=ultrafilter_frame(h.source), map=points)


def hom_of_frame_map(f: FrameMap) -> AlgHom:
    """``h_f(U) = f⁻¹[U]`` from Cm(target) to Cm(source)."""
    return AlgHom(
        source=cm(f.target),
        target=cm(f.source),
        map=[f.preimage(mask) for mask in range(f.target.full + 1)],
    )


def _homomor_witness(h: AlgHom) -> Optional[Dict[str, int]]:
    ts, tt = h.source.cond, h.target.cond
    for a in h.source.base.elements():
        for b in h.source.base.elements():
            if h.map[ts[a][b]] != tt[h.map[a]][h.map[b]]:
                return {"a": a, "b": b}
    return None


def cf_witness(f: FrameMap) -> Optional[Dict[str, int]]:
    """First (x, U, V) at which condition (CF) fails."""
    source, target = f.source, f.target
    for x in range(source.point_count):
        fx = f.map[x]
        for u in range(target.full + 1):
            pre_u = f.preimage(u)
            for v in range(target.full + 1):
                lhs = source.image[x][pre_u] & ~f.preimage(v) == 0
                rhs = target.image[fx][u] & ~v == 0
                if lhs != rhs:
                    return {"x": x, "U": u, "V": v}
    return None


def _conhom_witness(f: FrameMap) -> Optional[Dict[str, int]]:
    h = hom_of_frame_map(f)
    return _homomor_witness(h)


def hom_duality_check(h: AlgHom) -> Verdict:
    """h preserves ⇀ iff f_h satisfies (CF) iff h_{f_h} preserves ⇀; when it
    does, h_{f_h} recovers h through φ."""
    require_CA(h.source, "hom_duality_check")
    require_CA(h.target, "hom_duality_check")
    homomor = _homomor_witness(h)
    f = dual_map(h)
    cf = cf_witness(f)
    conhom = _conhom_witness(f)
    details = {
        "conditional": homomor is None,
        "cf": cf is None,
        "conhom": conhom is None,
        "homomor_witness": homomor,
        "cf_witness": cf,
    }
    if (homomor is None) != (cf is None):
        return Verdict.fail("hom_duality", homomor or cf, property="homomor_iff_cf", **details)
    if (cf is None) != (conhom is None):
        return Verdict.fail("hom_duality", cf or conhom, property="cf_iff_conhom", **details)
    if homomor is None:
        recovered = hom_of_frame_map(f)
        for a in h.source.base.elements():
            # h_{f_h}(φ_A(a)) = φ_B(h(a)); both Stone maps are the identity on masks
            if recovered.map[a] != h.map[a]:
                return Verdict.fail("hom_duality", {"a": a}, property="recovers", **details)
        details["recovers"] = True
    return Verdict.ok("hom_duality", **details)
