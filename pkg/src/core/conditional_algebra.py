"""
Conditional operators stored as tables, the axiom checker and the
D-operator (the set of all consequents).
"""
from itertools import product
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import structlog
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.core.boolean_core import FinBoolAlg, Filter, Ultrafilter, up_set
from src.core.errors import ContractError, InputError
from src.core.models import AxiomId, Verdict, parse_axiom_id
from src.core.registry import law_registry

logger = structlog.get_logger(__name__)

Table = Tuple[Tuple[int, ...], ...]


class CondAlg(BaseModel):
    """A finite Boolean algebra with a binary operator given by its table.

    ``cond[a][b]`` is ``a ⇀ b``. Membership in CA is not enforced here so
    that candidate tables can be held and checked.
    """

    model_config = ConfigDict(frozen=True)

    base: FinBoolAlg
    cond: Table

    @field_validator("cond", mode="before")
    @classmethod
    def _freeze_rows(cls, value):
        return tuple(tuple(row) for row in value)

    @model_validator(mode="after")
    def _check_table(self) -> "CondAlg":
        size = self.base.size
        if len(self.cond) != size:
            raise ValueError(f"table has {len(self.cond)} rows, expected {size}")
        for a, row in enumerate(self.cond):
            if len(row) != size:
                raise ValueError(f"row {a} has {len(row)} entries, expected {size}")
            for b, value in enumerate(row):
                if value < 0 or value >= size:
                    raise ValueError(f"entry [{a}][{b}] = {value} is outside [0, {size})")
        return self

    @classmethod
    def from_function(cls, atom_count: int, op: Callable[[int, int], int]) -> "CondAlg":
        base = FinBoolAlg(atom_count=atom_count)
        return cls(base=base, cond=[[op(a, b) for b in base.elements()] for a in base.elements()])

    @property
    def atom_count(self) -> int:
        return self.base.atom_count

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def top(self) -> int:
        return self.base.top

    def op(self, a: int, b: int) -> int:
        return self.cond[a][b]

    def with_entry(self, a: int, b: int, value: int) -> "CondAlg":
        """Copy of the algebra with a single table entry replaced"""
        rows = [list(row) for row in self.cond]
        rows[a][b] = value
        return CondAlg(base=self.base, cond=rows)


def first_violation(
    size: int,
    variables: Sequence[str],
    predicate: Callable[..., bool],
) -> Optional[dict]:
    """Lexicographically least assignment falsifying ``predicate``."""
    for values in product(range(size), repeat=len(variables)):
        if not predicate(*values):
            return dict(zip(variables, values))
    return None


def check_axiom(alg: CondAlg, axiom: Union[AxiomId, str]) -> Verdict:
    """Evaluate an axiom by exhaustive iteration over all assignments"""
    axiom_id = axiom if isinstance(axiom, AxiomId) else parse_axiom_id(axiom)
    law = law_registry.get_law(axiom_id)
    if law is None:
        raise InputError(f"no law registered for {axiom_id.value}")
    t, top = alg.cond, alg.top
    predicate = law.predicate
    counterexample = first_violation(alg.size, law.variables, lambda *v: predicate(t, top, *v))
    if counterexample is None:
        return Verdict.ok(axiom_id.value)
    return Verdict.fail(axiom_id.value, counterexample)


def check_axioms(alg: CondAlg, axioms: Iterable[Union[AxiomId, str]]) -> List[Verdict]:
    return [check_axiom(alg, axiom) for axiom in axioms]


def check_CA(alg: CondAlg) -> Verdict:
    """C1, C2 and C3; the counterexample comes from the first failing axiom"""
    for axiom_id in (AxiomId.C1, AxiomId.C2, AxiomId.C3):
        verdict = check_axiom(alg, axiom_id)
        if not verdict.holds:
            return Verdict.fail("CA", verdict.counterexample, axiom=axiom_id.value)
    return Verdict.ok("CA")


def require_CA(alg: CondAlg, operation: str):
    verdict = check_CA(alg)
    if not verdict.holds:
        raise ContractError(
            f"{operation} requires a conditional algebra; "
            f"{verdict.details['axiom']} fails at {verdict.counterexample}"
        )


def row_fixes_top(row: Sequence[int], top: int) -> bool:
    return row[top] == top


def row_preserves_meets(row: Sequence[int]) -> bool:
    size = len(row)
    return all(row[x & y] == row[x] & row[y] for x in range(size) for y in range(x + 1, size))


def row_local_check(alg: CondAlg) -> Verdict:
    """C1 holds iff every row fixes top, and C2 holds iff every row
    preserves binary meets. Holds for any table, conditional or not."""
    restated = [
        (AxiomId.C1, lambda row: row_fixes_top(row, alg.top)),
        (AxiomId.C2, row_preserves_meets),
    ]
    for axiom_id, row_ok in restated:
        verdict = check_axiom(alg, axiom_id)
        bad_rows = [a for a, row in enumerate(alg.cond) if not row_ok(row)]
        if verdict.holds == (not bad_rows):
            continue
        counterexample = verdict.counterexample if bad_rows == [] else {"a": bad_rows[0]}
        return Verdict.fail("row_local", counterexample, axiom=axiom_id.value)
    return Verdict.ok("row_local")


def table_difference(left: Table, right: Table) -> Optional[dict]:
    """The least ``(a, b)`` at which two tables differ, with both entries"""
    if len(left) != len(right):
        return {"sizes": [len(left), len(right)]}
    for a, (left_row, right_row) in enumerate(zip(left, right)):
        for b, (x, y) in enumerate(zip(left_row, right_row)):
            if x != y:
                return {"a": a, "b": b, "left": x, "right": y}
    return None


def monotonicity_report(alg: CondAlg) -> Verdict:
    """Isotone in the second argument, antitone in the first, and
    (a⇀b)∧(x⇀y) ≤ (a∧x)⇀(b∧y)."""
    require_CA(alg, "monotonicity_report")
    t = alg.cond
    laws = [
        ("isotone_second", ("a", "b", "c"),
         lambda a, b, c: b & c != b or t[a][b] & t[a][c] == t[a][b]),
        ("antitone_first", ("a", "b", "c"),
         lambda a, b, c: a & b != a or t[b][c] & t[a][c] == t[b][c]),
        ("meet_product", ("a", "b", "x", "y"),
         lambda a, b, x, y: (t[a][b] & t[x][y]) & t[a & x][b & y] == t[a][b] & t[x][y]),
    ]
    checked = []
    for name, variables, predicate in laws:
        counterexample = first_violation(alg.size, variables, predicate)
        if counterexample is not None:
            return Verdict.fail("monotonicity", counterexample, property=name)
        checked.append(name)
    return Verdict.ok("monotonicity", properties=checked)


def d_set(alg: CondAlg, X: Iterable[int], Y: Iterable[int]) -> FrozenSet[int]:
    """``D_X(Y) = {b : a⇀b ∈ X for some a ∈ Y}``"""
    members = frozenset(X)
    t = alg.cond
    result = set()
    for a in Y:
        row = t[a]
        for b in alg.base.elements():
            if row[b] in members:
                result.add(b)
    return frozenset(result)


def is_filter_set(alg: CondAlg, elements: FrozenSet[int]) -> bool:
    if alg.top not in elements:
        return False
    for x in elements:
        for y in elements:
            if x & y not in elements:
                return False
        for z in alg.base.elements():
            if x & z == x and z not in elements:
                return False
    return True


def consequent_generator(alg: CondAlg, atom_index: int, g: int) -> int:
    """Generator of ``D_u(↑g)``: the meet of all b with g⇀b ∈ u."""
    row = alg.cond[g]
    generator = alg.top
    for b in alg.base.elements():
        if row[b] >> atom_index & 1:
            generator &= b
    return generator


def d_filter(alg: CondAlg, u: Ultrafilter, F: Filter) -> Filter:
    """``D_u(F)`` computed as a set, checked to be a filter, returned by
    its generator; cross-checked against the single-row formula."""
    if u.atom_index >= alg.atom_count:
        raise InputError(f"ultrafilter u{u.atom_index} does not exist in an algebra with {alg.atom_count} atoms")
    alg.base.check_element(F.generator, "filter generator")
    members = [x for x in alg.base.elements() if u.contains(x)]
    consequents = d_set(alg, members, up_set(alg.base, F.generator))
    if not is_filter_set(alg, consequents):
        raise ContractError(
            f"D_u(F) for u=u{u.atom_index}, F=↑{F.generator} is not a filter; the algebra is outside CA"
        )
    generator = alg.top
    for b in consequents:
        generator &= b
    fast = consequent_generator(alg, u.atom_index, F.generator)
    if fast != generator:
        raise ContractError(
            f"D_u(F) generator {generator} differs from the single-row value {fast}; the algebra is outside CA"
        )
    return Filter(generator=generator)


def d_lemma_check(alg: CondAlg) -> Verdict:
    """Monotonicity of D in its argument and filterhood of D_H(F) over all
    principal filters H, F."""
    require_CA(alg, "d_lemma_check")
    base = alg.base
    ups = [up_set(base, g) for g in base.elements()]
    for h in base.elements():
        for f in base.elements():
            consequents = d_set(alg, ups[h], ups[f])
            if not is_filter_set(alg, consequents):
                return Verdict.fail("d_lemma", {"H": h, "F": f}, property="filter")
            for f_larger in base.elements():
                # ↑f ⊆ ↑f_larger when f_larger ≤ f
                if f_larger & f == f_larger and not consequents <= d_set(alg, ups[h], ups[f_larger]):
                    return Verdict.fail("d_lemma", {"H": h, "F": f, "F2": f_larger}, property="monotone")
    return Verdict.ok("d_lemma")
