"""
Tests for variety classification, correspondence and canonicity.
"""
import pytest
from hypothesis import given, settings

from src.core.conditional_algebra import check_axiom
from src.core.errors import ContractError, InputError
from src.core.generators import c8_without_c6, frame_from_singletons
from src.core.hybrid_frames import TFrame
from src.core.models import AxiomId, FrameCondId, VarietyTag
from src.core.varieties import (
    c6_c8_entailment_search, canonical_extension_closure_check, canonicity_check, check_frame_condition,
    classify_variety, correspondence_check, fundamental_lemma2_check, fundamental_lemma_check,
    is_upward_closed_tagset, lemma_t_middle_check, psb_s_relation, variety_poset,
)
from strategies import algebras, frames

UNCLOSED = TFrame(point_count=2, triples=[(0, 1, 0)])


class TestClassification:
    def test_named(self, proj2, glob2):
        assert classify_variety(glob2) == set(VarietyTag)
        assert classify_variety(proj2) == {VarietyTag.CA}

    def test_mutant_has_no_tag(self, mutant):
        assert classify_variety(mutant) == set()

    def test_poset(self):
        graph = variety_poset()
        assert set(graph.successors(VarietyTag.S2IA)) == {VarietyTag.PSC, VarietyTag.SIA}
        assert list(graph.successors(VarietyTag.PSB)) == [VarietyTag.CA]

    def test_upward_closed_tagsets(self):
        assert is_upward_closed_tagset({VarietyTag.PSB, VarietyTag.CA})
        assert is_upward_closed_tagset(set())
        assert not is_upward_closed_tagset({VarietyTag.PSB})
        assert not is_upward_closed_tagset({VarietyTag.SIA, VarietyTag.PSB, VarietyTag.CA, VarietyTag.S2IA})

    def test_c8_without_c6(self):
        alg = c8_without_c6()
        assert VarietyTag.PSB in classify_variety(alg)
        assert check_axiom(alg, AxiomId.C8).holds
        assert not check_axiom(alg, AxiomId.C6).holds

    @given(algebras(max_atoms=3))
    @settings(max_examples=40, deadline=None)
    def test_tags_are_upward_closed(self, alg):
        assert is_upward_closed_tagset(classify_variety(alg))
        assert canonical_extension_closure_check(alg).holds


class TestFrameConditions:
    def test_symmetric_counterexample(self, proj2_dual):
        verdict = check_frame_condition(proj2_dual, "A6")
        assert verdict.counterexample == {"x": 0, "y": 0, "Y": 0}

    def test_reflexive(self, proj2_dual):
        assert check_frame_condition(proj2_dual, FrameCondId.T5).holds

    def test_non_empty_middle(self, proj2_dual):
        verdict = check_frame_condition(proj2_dual, FrameCondId.NON_EMPTY_MIDDLE)
        assert verdict.counterexample == {"x": 0, "y": 0}

    def test_t_conditions_need_closed_frames(self):
        assert check_frame_condition(UNCLOSED, FrameCondId.A4).holds
        with pytest.raises(ContractError):
            check_frame_condition(UNCLOSED, FrameCondId.T4)

    def test_unknown_condition(self, proj2_dual):
        with pytest.raises(InputError):
            check_frame_condition(proj2_dual, "T9")

    def test_singleton_witness_and_empty_middle(self):
        # ∅-middle triples are skipped by T3* but not by the PSB witness condition
        f = frame_from_singletons(2, [(0, 1, 0)])
        assert check_frame_condition(f, FrameCondId.T3STAR).holds
        assert check_frame_condition(f, FrameCondId.PSB_WITNESS).holds
        with_empty = TFrame(point_count=2, triples=list(f.triples) + [(1, z, 1) for z in range(4)])
        assert check_frame_condition(with_empty, FrameCondId.T3STAR).holds
        assert check_frame_condition(with_empty, FrameCondId.PSB_WITNESS).counterexample == {"x": 1, "y": 1, "Y": 0}


class TestCorrespondence:
    def test_proj2_c1_star(self, proj2):
        verdict = correspondence_check(proj2, AxiomId.C1STAR)
        assert verdict.holds
        assert verdict.details["equation"] is False
        assert verdict.details["frame_condition"] is False

    def test_proj2_c6(self, proj2):
        verdict = correspondence_check(proj2, "C6")
        assert verdict.holds
        assert verdict.details["condition"] == "A6"
        assert verdict.details["equation"] is False

    def test_glob2_c3_star(self, glob2):
        verdict = correspondence_check(glob2, AxiomId.C3STAR)
        assert verdict.holds
        assert verdict.details["equation"] is True

    def test_unpaired_axiom(self, glob2):
        with pytest.raises(InputError):
            correspondence_check(glob2, AxiomId.C1)

    def test_requires_conditional_algebra(self, mutant):
        with pytest.raises(ContractError):
            correspondence_check(mutant, AxiomId.C5)

    @given(algebras(max_atoms=3))
    @settings(max_examples=30, deadline=None)
    def test_every_pair(self, alg):
        for axiom in (AxiomId.C1STAR, AxiomId.C3STAR, AxiomId.C4, AxiomId.C5, AxiomId.C6, AxiomId.C7, AxiomId.C8):
            assert correspondence_check(alg, axiom).holds


class TestCanonicity:
    def test_reflexive_proj2_dual(self, proj2_dual):
        verdict = canonicity_check(proj2_dual, "T5")
        assert verdict.holds
        assert verdict.details["frame_condition"] is True
        assert verdict.details["equation"] is True

    def test_unpaired_condition(self, proj2_dual):
        with pytest.raises(InputError):
            canonicity_check(proj2_dual, FrameCondId.A4)

    def test_requires_conditional_space(self):
        with pytest.raises(ContractError):
            canonicity_check(UNCLOSED, FrameCondId.T5)

    @given(frames())
    @settings(max_examples=30, deadline=None)
    def test_every_condition(self, f):
        for cond in (FrameCondId.T3STAR, FrameCondId.T4, FrameCondId.T5, FrameCondId.T6,
                     FrameCondId.T7, FrameCondId.T8):
            assert canonicity_check(f, cond).holds


class TestLemmas:
    def test_s_relation_of_glob2(self, glob2):
        assert psb_s_relation(glob2) == ((0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1))

    def test_s_relation_needs_psb(self, proj2):
        with pytest.raises(ContractError):
            psb_s_relation(proj2)

    def test_t_middle(self, proj2, glob2):
        assert lemma_t_middle_check(proj2).details["c1_star"] is False
        assert lemma_t_middle_check(glob2).holds

    def test_fundamental_lemmas(self, glob2, proj2):
        assert fundamental_lemma_check(glob2).holds
        assert fundamental_lemma_check(proj2).holds
        assert fundamental_lemma2_check(proj2).holds

    def test_fundamental_lemma_needs_c3_star(self, no_c3_star):
        assert not check_axiom(no_c3_star, AxiomId.C3STAR).holds
        with pytest.raises(ContractError):
            fundamental_lemma_check(no_c3_star)
        assert fundamental_lemma2_check(no_c3_star).holds


def test_c6_entails_c8_on_samples():
    verdict = c6_c8_entailment_search(samples=200, seed=0, atoms=2)
    assert verdict.holds
    assert verdict.details["psb_samples"] == 200
    assert verdict.details["c8_without_c6"] is not None
