"""
Tests for conditional algebra tables, the axiom checker and the D-operator.
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from src.core.boolean_core import FinBoolAlg, Filter, Ultrafilter
from src.core.conditional_algebra import (
    CondAlg, check_axiom, check_axioms, check_CA, consequent_generator, d_filter, d_lemma_check, d_set,
    first_violation, is_filter_set, monotonicity_report, row_local_check, row_preserves_meets, table_difference,
)
from src.core.errors import ContractError, InputError
from src.core.generators import const_one, random_table, sample_rng
from src.core.models import AxiomId
from strategies import algebras


class TestTable:
    def test_rows_are_frozen(self, proj2):
        assert proj2.cond == ((0, 1, 2, 3),) * 4
        assert proj2.op(2, 1) == 1

    def test_wrong_row_count(self):
        with pytest.raises(ValidationError):
            CondAlg(base=FinBoolAlg(atom_count=1), cond=[[0, 1]])

    def test_wrong_row_length(self):
        with pytest.raises(ValidationError):
            CondAlg(base=FinBoolAlg(atom_count=1), cond=[[0, 1], [1]])

    def test_entry_out_of_range(self):
        with pytest.raises(ValidationError):
            CondAlg(base=FinBoolAlg(atom_count=1), cond=[[0, 2], [1, 1]])

    def test_with_entry_copies(self, proj2):
        changed = proj2.with_entry(1, 0, 1)
        assert changed.cond[1][0] == 1
        assert proj2.cond[1][0] == 0


class TestAxioms:
    def test_named_algebras_are_conditional(self, proj2, glob2):
        assert check_CA(proj2).holds
        assert check_CA(glob2).holds

    def test_mutant_fails_c2_at_least_assignment(self, mutant):
        verdict = check_CA(mutant)
        assert not verdict.holds
        assert verdict.details["axiom"] == "C2"
        assert verdict.counterexample == {"a": 1, "b": 0, "c": 2}

    def test_c1_star_fails_in_proj2(self, proj2):
        verdict = check_axiom(proj2, AxiomId.C1STAR)
        assert not verdict.holds
        assert verdict.counterexample == {"a": 0}

    def test_c1_star_holds_in_glob2(self, glob2):
        assert check_axiom(glob2, "C1star").holds

    def test_axiom_by_name(self, glob2):
        verdicts = check_axioms(glob2, ["C4", "C5", "C6", "C7", "C8"])
        assert [v.law for v in verdicts] == ["C4", "C5", "C6", "C7", "C8"]
        assert all(v.holds for v in verdicts)

    def test_unknown_axiom(self, glob2):
        with pytest.raises(InputError):
            check_axiom(glob2, "C9")

    def test_first_violation_is_lexicographic(self):
        assert first_violation(4, ("a", "b"), lambda a, b: a + b < 5) == {"a": 2, "b": 3}
        assert first_violation(4, ("a",), lambda a: True) is None

    def test_row_preserves_meets(self):
        assert row_preserves_meets((0, 2, 1, 3))
        assert not row_preserves_meets((1, 1, 2, 3))


class TestRowLocal:
    def test_named_tables(self, proj2, glob2, mutant):
        for alg in (proj2, glob2, mutant, const_one(2)):
            assert row_local_check(alg).holds

    def test_table_failing_c1(self):
        alg = CondAlg(base=FinBoolAlg(atom_count=1), cond=[[0, 1], [1, 0]])
        assert not check_axiom(alg, AxiomId.C1).holds
        assert not check_axiom(alg, AxiomId.C2).holds
        assert row_local_check(alg).holds

    @given(st.integers(0, 3), st.integers(0, 2 ** 20))
    @settings(max_examples=50, deadline=None)
    def test_arbitrary_tables(self, n, seed):
        alg = random_table(n, sample_rng("random-table", n, n, seed, 0), set())
        assert row_local_check(alg).holds


class TestTableDifference:
    def test_least_differing_entry(self, proj2, mutant):
        assert table_difference(proj2.cond, mutant.cond) == {"a": 1, "b": 0, "left": 0, "right": 1}
        assert table_difference(proj2.cond, proj2.cond) is None

    def test_different_sizes(self, proj2):
        assert table_difference(proj2.cond, ((0, 1), (0, 1))) == {"sizes": [4, 2]}


class TestMonotonicity:
    def test_glob2(self, glob2):
        verdict = monotonicity_report(glob2)
        assert verdict.holds
        assert verdict.details["properties"] == ["isotone_second", "antitone_first", "meet_product"]

    def test_requires_conditional_algebra(self, mutant):
        with pytest.raises(ContractError):
            monotonicity_report(mutant)

    @given(algebras(max_atoms=3))
    @settings(max_examples=40, deadline=None)
    def test_generated_algebras(self, alg):
        assert check_CA(alg).holds
        assert monotonicity_report(alg).holds


class TestDOperator:
    def test_d_set(self, proj2):
        assert d_set(proj2, {1, 3}, {1}) == frozenset({1, 3})

    def test_d_filter_proj2(self, proj2):
        assert d_filter(proj2, Ultrafilter(atom_index=0), Filter(generator=1)).generator == 1
        assert d_filter(proj2, Ultrafilter(atom_index=1), Filter(generator=0)).generator == 2

    def test_d_filter_glob2_improper(self, glob2):
        assert d_filter(glob2, Ultrafilter(atom_index=0), Filter(generator=0)).generator == 0
        assert consequent_generator(glob2, 0, 1) == 1

    def test_d_filter_unknown_ultrafilter(self, proj2):
        with pytest.raises(InputError):
            d_filter(proj2, Ultrafilter(atom_index=2), Filter(generator=1))

    def test_d_filter_outside_ca(self, mutant):
        # row 1 of the mutant sends 0 and 1 to {u0}, so D_u0(↑1) is not a filter
        with pytest.raises(ContractError):
            d_filter(mutant, Ultrafilter(atom_index=0), Filter(generator=1))

    def test_is_filter_set(self, proj2):
        assert is_filter_set(proj2, frozenset({1, 3}))
        assert not is_filter_set(proj2, frozenset({1, 2, 3}))

    @given(algebras(max_atoms=2))
    @settings(max_examples=30, deadline=None)
    def test_d_lemma(self, alg):
        assert d_lemma_check(alg).holds
