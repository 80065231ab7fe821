"""
Model search: algebras satisfying a set of axioms and violating others.
"""
from typing import Iterable, List

import structlog

from src.core.boolean_core import MAX_ATOMS
from src.core.conditional_algebra import CondAlg, check_axiom
from src.core.errors import InputError
from src.core.generators import enumerate_exhaustive, generate, random_table, sample_rng
from src.core.models import AxiomId, GeneratorKind, GenSpec

logger = structlog.get_logger(__name__)

# Random kinds give up after this many samples per requested result
ATTEMPTS_PER_RESULT = 2000


def matches(alg: CondAlg, require: Iterable[AxiomId], forbid: Iterable[AxiomId]) -> bool:
    return all(check_axiom(alg, axiom).holds for axiom in require) and all(
        not check_axiom(alg, axiom).holds for axiom in forbid
    )


def _candidates(spec: GenSpec, require: set, attempts: int):
    if spec.kind == GeneratorKind.EXHAUSTIVE:
        for n in range(spec.min_atoms, spec.max_atoms + 1):
            yield from enumerate_exhaustive(n, require)
        return
    for index in range(attempts):
        if spec.kind == GeneratorKind.RANDOM_TABLE:
            rng = sample_rng(spec.kind.value, spec.min_atoms, spec.max_atoms, spec.seed, index)
            n = rng.randint(spec.min_atoms, spec.max_atoms)
            yield random_table(n, rng, require)
        else:
            yield generate(spec, index)


def search(
    spec: GenSpec,
    require: Iterable[AxiomId] = (),
    forbid: Iterable[AxiomId] = (),
    limit: int = 1,
) -> List[CondAlg]:
    """Up to ``limit`` algebras from the stream of ``spec`` that satisfy every
    required axiom and violate every forbidden one. Exhaustive search returns
    them in lexicographic table order; an unsatisfiable search returns an
    empty list."""
    require, forbid = set(require), set(forbid)
    if spec.max_atoms > MAX_ATOMS:
        raise InputError(f"max_atoms {spec.max_atoms} exceeds the cap of {MAX_ATOMS}")
    if limit < 0:
        raise InputError("limit must be non-negative")
    found: List[CondAlg] = []
    if limit == 0:
        return found
    examined = 0
    for alg in _candidates(spec, require, ATTEMPTS_PER_RESULT * limit):
        examined += 1
        if matches(alg, require, forbid):
            found.append(alg)
            if len(found) == limit:
                break
    logger.info(
        "Search finished",
        kind=spec.kind.value,
        examined=examined,
        found=len(found),
        require=sorted(a.value for a in require),
        forbid=sorted(a.value for a in forbid),
    )
    return found
