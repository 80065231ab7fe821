"""
Named algebras and seeded generators of conditional algebras and frames.

Every random object is a pure function of (kind, bounds, seed, index): the
per-sample RNG is seeded with that tuple, so samples are reproducible and
independent of the order in which they are drawn.
"""
import random
from itertools import product
from typing import Iterable, Iterator, List, Optional, Set, Tuple

import networkx as nx
import structlog

from src.core.boolean_core import FinBoolAlg, iter_bits, submasks
from src.core.conditional_algebra import CondAlg
from src.core.errors import InputError
from src.core.hybrid_frames import TFrame, cm, upward_closure
from src.core.models import AxiomId, GeneratorKind, GenSpec

logger = structlog.get_logger(__name__)

EXHAUSTIVE_MAX_ATOMS = 2
EXHAUSTIVE_MAX_TABLES = 10 ** 7


# Named algebras

def proj(n: int) -> CondAlg:
    """``a⇀b := b``"""
    return CondAlg.from_function(n, lambda a, b: b)


def glob(n: int) -> CondAlg:
    """``a⇀b := 1`` if a ≤ b, else 0."""
    top = (1 << n) - 1
    return CondAlg.from_function(n, lambda a, b: top if a & b == a else 0)


def degenerate() -> CondAlg:
    return proj(0)


def const_one(n: int) -> CondAlg:
    top = (1 << n) - 1
    return CondAlg.from_function(n, lambda a, b: top)


def proj2_mutant() -> CondAlg:
    """proj2 with ``{u1}⇀0`` raised to ``{u0}``, breaking C2."""
    return proj(2).with_entry(0b01, 0b00, 0b01)


def c8_without_c6() -> CondAlg:
    """Complex algebra of the singleton-generated frame S = {(0,0,0), (0,0,1)}:
    a PSB algebra satisfying C8 but not C6."""
    return cm(frame_from_singletons(2, [(0, 0, 0), (0, 0, 1)]))


NAMED_ALGEBRAS = {
    "proj2": lambda: proj(2),
    "glob2": lambda: glob(2),
    "proj3": lambda: proj(3),
    "glob3": lambda: glob(3),
    "degenerate": degenerate,
    "const_one2": lambda: const_one(2),
}


def sample_rng(kind: str, low: int, high: int, seed: int, index: int) -> random.Random:
    return random.Random(f"{kind}:{low}:{high}:{seed}:{index}")


# Rows

def meet_preserving_row(n: int, coatom_values: Iterable[int]) -> Tuple[int, ...]:
    """The unique meet-preserving, top-fixing map taking the coatom missing
    atom i to ``coatom_values[i]``."""
    top = (1 << n) - 1
    values = list(coatom_values)
    row = []
    for x in range(1 << n):
        value = top
        # coatoms above x are those missing an atom outside x
        for i in iter_bits(top & ~x):
            value &= values[i]
        row.append(value)
    return tuple(row)


def meet_row_with_top(n: int, top_value: int, coatom_values: Iterable[int]) -> Tuple[int, ...]:
    """A meet-preserving row whose value at top is ``top_value``.

    Without C1 such a row is determined by its top value t and its coatom
    values, which may be any submasks of t.
    """
    row = meet_preserving_row(n, coatom_values)
    return row[:-1] + (top_value,)


def row_candidates(n: int, require: Set[AxiomId]) -> List[Tuple[int, ...]]:
    """Every row allowed by the row-local axioms in ``require``, in
    lexicographic order."""
    size, top = 1 << n, (1 << n) - 1
    if AxiomId.C2 in require:
        if AxiomId.C1 in require:
            rows = {meet_preserving_row(n, values) for values in product(range(size), repeat=n)}
        else:
            rows = {
                meet_row_with_top(n, t, values)
                for t in range(size)
                for values in product(list(submasks(t)), repeat=n)
            }
        return sorted(rows)
    if AxiomId.C1 in require:
        return [row + (top,) for row in product(range(size), repeat=size - 1)]
    return list(product(range(size), repeat=size))


def _random_meet_row(n: int, rng: random.Random) -> Tuple[int, ...]:
    """Uniform over meet-preserving rows: t has 2^(|t|·n) completions."""
    size = 1 << n
    weights = [1 << (bin(t).count("1") * n) for t in range(size)]
    t = rng.choices(range(size), weights=weights)[0]
    return meet_row_with_top(n, t, [rng.randrange(size) & t for _ in range(n)])


def _random_row(n: int, rng: random.Random, require: Set[AxiomId]) -> Tuple[int, ...]:
    size, top = 1 << n, (1 << n) - 1
    if AxiomId.C2 in require and AxiomId.C1 in require:
        return meet_preserving_row(n, [rng.randrange(size) for _ in range(n)])
    if AxiomId.C2 in require:
        return _random_meet_row(n, rng)
    row = [rng.randrange(size) for _ in range(size)]
    if AxiomId.C1 in require:
        row[top] = top
    return tuple(row)


def close_downward(rows: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """``row[a] := ⋀_{a′⊆a} row[a′]``, making the table antitone in its
    first argument."""
    closed = []
    for a in range(len(rows)):
        row = list(rows[a])
        for smaller in submasks(a):
            row = [x & y for x, y in zip(row, rows[smaller])]
        closed.append(tuple(row))
    return closed


def random_table(n: int, rng: random.Random, require: Optional[Set[AxiomId]] = None) -> CondAlg:
    """Rows drawn uniformly from the row-local candidates; closed downward
    when C3 is required."""
    if require is None:
        require = {AxiomId.C1, AxiomId.C2, AxiomId.C3}
    rows = [_random_row(n, rng, require) for _ in range(1 << n)]
    if AxiomId.C3 in require:
        rows = close_downward(rows)
    return CondAlg(base=FinBoolAlg(atom_count=n), cond=rows)


# Frames

def random_upward_closed_frame(m: int, rng: random.Random) -> TFrame:
    """Upward closure of a few random generating triples per pair of points."""
    generators = []
    for x, y in product(range(m), repeat=2):
        for _ in range(rng.choice((0, 0, 1, 1, 2))):
            generators.append((x, rng.randrange(1 << m), y))
    return upward_closure(TFrame(point_count=m, triples=generators))


def frame_from_singletons(m: int, relation: Iterable[Tuple[int, int, int]]) -> TFrame:
    """``T(x,K,z)`` iff ``S(x,y,z)`` for some y ∈ K."""
    triples = [
        (x, k, z)
        for x, y, z in relation
        for k in range(1 << m)
        if k >> y & 1
    ]
    return TFrame(point_count=m, triples=triples)


def random_singleton_frame(m: int, rng: random.Random) -> TFrame:
    relation = [s for s in product(range(m), repeat=3) if rng.random() < 0.5]
    return frame_from_singletons(m, relation)


def random_frame(m: int, rng: random.Random) -> TFrame:
    """Either kind of random conditional space, chosen by a coin flip."""
    if rng.random() < 0.5:
        return random_singleton_frame(m, rng)
    return random_upward_closed_frame(m, rng)


# Structured families

def box_of_relation(n: int, successors: List[int], c: int) -> int:
    """``□_R(c) = {x : R(x) ⊆ c}``"""
    result = 0
    for x in range(n):
        if successors[x] & ~c == 0:
            result |= 1 << x
    return result


def random_relation(n: int, rng: random.Random) -> List[int]:
    """Random R on the atoms, possibly made reflexive, symmetric or
    transitive, as successor masks."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((x, y) for x, y in product(range(n), repeat=2) if rng.random() < 0.5)
    if rng.random() < 0.5:
        graph.add_edges_from((x, x) for x in range(n))
    if rng.random() < 0.5:
        graph.add_edges_from([(y, x) for x, y in graph.edges])
    if rng.random() < 0.5:
        graph = nx.transitive_closure(graph)
    return [sum(1 << y for y in graph.successors(x)) for x in range(n)]


def strict_implication(n: int, successors: List[int]) -> CondAlg:
    """``a⇀b := □_R(¬a ∨ b)``"""
    top = (1 << n) - 1
    return CondAlg.from_function(n, lambda a, b: box_of_relation(n, successors, (a ^ top) | b))


def projection_family(n: int, k: int) -> CondAlg:
    """``a⇀b := b ∨ k``"""
    return CondAlg.from_function(n, lambda a, b: b | k)


def generate(spec: GenSpec, index: int) -> CondAlg:
    """Sample ``index`` of the stream described by ``spec``; always a CA
    member."""
    if spec.kind == GeneratorKind.EXHAUSTIVE:
        raise InputError("exhaustive generation enumerates; use enumerate_exhaustive")
    rng = sample_rng(spec.kind.value, spec.min_atoms, spec.max_atoms, spec.seed, index)
    n = rng.randint(spec.min_atoms, spec.max_atoms)
    if spec.kind == GeneratorKind.RANDOM_TABLE:
        return random_table(n, rng)
    if spec.kind == GeneratorKind.FROM_FRAME:
        return cm(random_frame(n, rng))
    if spec.kind == GeneratorKind.STRICT_IMPLICATION:
        return strict_implication(n, random_relation(n, rng))
    return projection_family(n, rng.randrange(1 << n))


def generate_frame(spec: GenSpec, index: int) -> TFrame:
    rng = sample_rng("frame", spec.min_atoms, spec.max_atoms, spec.seed, index)
    return random_frame(rng.randint(spec.min_atoms, spec.max_atoms), rng)


# Exhaustive enumeration

def exhaustive_space(n: int, require: Set[AxiomId]) -> int:
    return len(row_candidates(n, require)) ** (1 << n)


def enumerate_exhaustive(n: int, require: Iterable[AxiomId] = ()) -> Iterator[CondAlg]:
    """Every table whose rows pass the row-local axioms of ``require``, in
    lexicographic order; C3, when required, prunes rows not pointwise below
    the rows of their subsets."""
    require = set(require)
    if n > EXHAUSTIVE_MAX_ATOMS:
        raise InputError(f"exhaustive search supports at most {EXHAUSTIVE_MAX_ATOMS} atoms, got {n}")
    space = exhaustive_space(n, require)
    if space > EXHAUSTIVE_MAX_TABLES:
        raise InputError(f"exhaustive search space of {space} tables exceeds {EXHAUSTIVE_MAX_TABLES}")
    size = 1 << n
    base = FinBoolAlg(atom_count=n)
    candidates = row_candidates(n, require)
    antitone = AxiomId.C3 in require
    logger.debug("Exhaustive enumeration started", atoms=n, row_candidates=len(candidates))
    rows: List[Tuple[int, ...]] = []

    def fits(a: int, row: Tuple[int, ...]) -> bool:
        for smaller in submasks(a):
            if smaller == a:
                continue
            if any(x & y != x for x, y in zip(row, rows[smaller])):
                return False
        return True

    def extend(a: int):
        if a == size:
            yield CondAlg(base=base, cond=rows)
            return
        for row in candidates:
            if antitone and not fits(a, row):
                continue
            rows.append(row)
            yield from extend(a + 1)
            rows.pop()

    yield from extend(0)
