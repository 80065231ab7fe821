from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict

from .models import AxiomId, VarietyTag

# A predicate receives the operator table, the top element and one value per
# law variable, and answers whether the law holds at that assignment.
LawPredicate = Callable[..., bool]


class Law(BaseModel):
    """A universally quantified law over the elements of an algebra"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    law_id: AxiomId
    variables: Tuple[str, ...]
    statement: str
    predicate: LawPredicate


def _leq(s: int, t: int) -> bool:
    return s & t == s


class LawRegistry:
    def __init__(self):
        self._laws: Dict[AxiomId, Law] = {}
        self._variety_index: Dict[VarietyTag, Set[AxiomId]] = {}

    def register_law(
        self,
        law_id: AxiomId,
        variables: Sequence[str],
        statement: str,
        predicate: LawPredicate,
    ) -> Law:
        """Register a law under its identifier"""
        law = Law(law_id=law_id, variables=tuple(variables), statement=statement, predicate=predicate)
        self._laws[law_id] = law
        return law

    def register_variety(self, tag: VarietyTag, axioms: Sequence[AxiomId]):
        """Register the defining axioms of a variety"""
        self._variety_index[tag] = set(axioms)

    def get_law(self, law_id: AxiomId) -> Optional[Law]:
        return self._laws.get(law_id)

    def axioms_for_variety(self, tag: VarietyTag) -> Set[AxiomId]:
        return set(self._variety_index.get(tag, set()))

    def list_varieties(self) -> List[VarietyTag]:
        return list(self._variety_index.keys())


def _register_defaults(registry: LawRegistry):
    """Populate the registry with the conditional axioms and the box laws"""
    registry.register_law(
        AxiomId.C1, ("a",), "a⇀1 = 1",
        lambda t, top, a: t[a][top] == top,
    )
    registry.register_law(
        AxiomId.C2, ("a", "b", "c"), "(a⇀b)∧(a⇀c) = a⇀(b∧c)",
        lambda t, top, a, b, c: t[a][b] & t[a][c] == t[a][b & c],
    )
    registry.register_law(
        AxiomId.C3, ("a", "b", "c"), "(a∨b)⇀c ≤ (a⇀c)∧(b⇀c)",
        lambda t, top, a, b, c: _leq(t[a | b][c], t[a][c] & t[b][c]),
    )
    registry.register_law(
        AxiomId.C1STAR, ("a",), "0⇀a = 1",
        lambda t, top, a: t[0][a] == top,
    )
    registry.register_law(
        AxiomId.C3STAR, ("a", "b", "c"), "(a⇀c)∧(b⇀c) ≤ (a∨b)⇀c",
        lambda t, top, a, b, c: _leq(t[a][c] & t[b][c], t[a | b][c]),
    )
    registry.register_law(
        AxiomId.C4, ("a", "b", "c"), "a⇀b ≤ c⇀(a⇀b)",
        lambda t, top, a, b, c: _leq(t[a][b], t[c][t[a][b]]),
    )
    registry.register_law(
        AxiomId.C5, ("a", "b"), "a∧(a⇀b) ≤ b",
        lambda t, top, a, b: _leq(a & t[a][b], b),
    )
    registry.register_law(
        AxiomId.C6, ("a", "b"), "a⇀b ≤ ¬b⇀¬a",
        lambda t, top, a, b: _leq(t[a][b], t[b ^ top][a ^ top]),
    )
    registry.register_law(
        AxiomId.C7, ("a", "b", "c"), "¬(a⇀b) ≤ c⇀¬(a⇀b)",
        lambda t, top, a, b, c: _leq(t[a][b] ^ top, t[c][t[a][b] ^ top]),
    )
    registry.register_law(
        AxiomId.C8, ("a", "b", "c"), "(1⇀(¬a∨b))∧(b⇀c) ≤ a⇀c",
        lambda t, top, a, b, c: _leq(t[top][(a ^ top) | b] & t[b][c], t[a][c]),
    )
    # Box laws read the table through □_b(x) := b⇀x.
    registry.register_law(
        AxiomId.M1, ("b",), "□_b(1) = 1",
        lambda t, top, b: t[b][top] == top,
    )
    registry.register_law(
        AxiomId.M2, ("b", "a", "c"), "□_b(a∧c) = □_b(a)∧□_b(c)",
        lambda t, top, b, a, c: t[b][a & c] == t[b][a] & t[b][c],
    )
    registry.register_law(
        AxiomId.M3, ("b1", "b2", "a"), "□_{b1∨b2}(a) ≤ □_{b1}(a)∧□_{b2}(a)",
        lambda t, top, b1, b2, a: _leq(t[b1 | b2][a], t[b1][a] & t[b2][a]),
    )

    ca = [AxiomId.C1, AxiomId.C2, AxiomId.C3]
    psb = ca + [AxiomId.C1STAR, AxiomId.C3STAR]
    registry.register_variety(VarietyTag.CA, ca)
    registry.register_variety(VarietyTag.PSB, psb)
    registry.register_variety(VarietyTag.PSC, psb + [AxiomId.C5, AxiomId.C6])
    registry.register_variety(VarietyTag.SIA, psb + [AxiomId.C4, AxiomId.C5, AxiomId.C7, AxiomId.C8])
    registry.register_variety(VarietyTag.S2IA, psb + [AxiomId.C4, AxiomId.C5, AxiomId.C6, AxiomId.C7])


# Global registry instance
law_registry = LawRegistry()
_register_defaults(law_registry)
