"""
Tests for multi-modal antitone algebras.
"""
from itertools import product

import pytest
from hypothesis import given, settings
from pydantic import ValidationError

from src.core.boolean_core import FinBoolAlg
from src.core.conditional_algebra import CondAlg
from src.core.errors import InputError
from src.core.multimodal import (
    MMAlg, box_d_bridge_check, box_injectivity_check, check_mma_axioms, em_mma, is_boolean_subalgebra,
    mma_embedding_check, mma_roundtrip_check, q_box, q_monotonicity_check, q_relation, qa_equals_box_phi_check,
    to_conditional, to_mma,
)
from strategies import algebras

ONE = FinBoolAlg(atom_count=1)


def test_boolean_subalgebra():
    base = FinBoolAlg(atom_count=2)
    assert is_boolean_subalgebra(base, [0, 3])
    assert is_boolean_subalgebra(base, [0, 1, 2, 3])
    assert not is_boolean_subalgebra(base, [0, 1, 3])


def test_round_trip(glob2):
    m = to_mma(glob2)
    assert m.is_full
    assert m.box(1, 3) == 3
    assert to_conditional(m).cond == glob2.cond


def test_index_set_must_be_subalgebra():
    with pytest.raises(ValidationError):
        MMAlg(base=FinBoolAlg(atom_count=2), index_set=[0, 1], boxes={0: (0, 1, 2, 3), 1: (0, 1, 2, 3)})


def test_boxes_must_match_index_set():
    with pytest.raises(ValidationError):
        MMAlg(base=ONE, index_set=[0, 1], boxes={0: (0, 1)})


def test_partial_family():
    identity = (0, 1, 2, 3)
    m = MMAlg(base=FinBoolAlg(atom_count=2), index_set=[3, 0], boxes={0: identity, 3: identity})
    assert m.index_set == (0, 3)
    assert check_mma_axioms(m).holds
    with pytest.raises(InputError):
        to_conditional(m)


def test_m3_violation():
    # □_1 is constant top, so □_{0∨1} is not below □_0
    m = MMAlg(base=ONE, index_set=[0, 1], boxes={0: (0, 1), 1: (1, 1)})
    verdict = check_mma_axioms(m)
    assert not verdict.holds
    assert verdict.details["axiom"] == "M3"
    assert verdict.counterexample == {"b1": 0, "b2": 1, "a": 0}
    with pytest.raises(InputError):
        to_conditional(m)


def test_m2_violation():
    m = MMAlg(
        base=FinBoolAlg(atom_count=2), index_set=[0, 3], boxes={0: (0, 1, 1, 3), 3: (0, 1, 2, 3)},
    )
    verdict = check_mma_axioms(m)
    assert verdict.details["axiom"] == "M2"
    assert verdict.counterexample == {"b": 0, "a": 1, "c": 2}


def test_m1_violation():
    m = MMAlg(base=ONE, index_set=[0, 1], boxes={0: (1, 1), 1: (1, 0)})
    verdict = check_mma_axioms(m)
    assert verdict.details["axiom"] == "M1"
    assert verdict.counterexample == {"b": 1}


def test_q_relation_of_proj2(proj2):
    m = to_mma(proj2)
    assert q_relation(m, 1) == (1, 2)
    assert q_box(m, 1) == (0, 1, 2, 3)
    with pytest.raises(InputError):
        q_relation(MMAlg(base=FinBoolAlg(atom_count=2), index_set=[0, 3], boxes={0: (0, 1, 2, 3), 3: (0, 1, 2, 3)}), 1)


def test_q_relation_of_glob2(glob2):
    m = to_mma(glob2)
    assert q_relation(m, 1) == (1, 1)
    assert q_relation(m, 0) == (0, 0)
    assert q_relation(m, 2) == (2, 2)
    assert q_relation(m, 3) == (3, 3)


def test_q_monotonicity_of_named(proj2, glob2):
    assert q_monotonicity_check(proj2).holds
    assert q_monotonicity_check(glob2).holds


@given(algebras(max_atoms=3))
@settings(max_examples=30, deadline=None)
def test_q_relation_grows_with_the_index(alg):
    m = to_mma(alg)
    for b, c in product(m.index_set, repeat=2):
        if b & c == b:
            for u in range(alg.atom_count):
                assert q_relation(m, b)[u] & ~q_relation(m, c)[u] == 0
    assert q_monotonicity_check(alg).holds


def test_mma_roundtrip(proj2, glob2):
    assert mma_roundtrip_check(proj2).holds
    assert mma_roundtrip_check(glob2).holds


def test_canonical_extension_keeps_boxes(glob2):
    m = to_mma(glob2)
    assert em_mma(m).boxes == m.boxes
    assert mma_embedding_check(m).holds
    assert box_injectivity_check(m).holds


def test_box_d_bridge_with_c3(glob2):
    verdict = box_d_bridge_check(glob2)
    assert verdict.holds
    assert verdict.details["c3"] is True


def test_box_d_bridge_without_c3():
    # C1 and C2 hold row by row, but 1⇀0 = 1 is not below 0⇀0 = 0
    alg = CondAlg(base=ONE, cond=[[0, 1], [1, 1]])
    verdict = box_d_bridge_check(alg)
    assert verdict.holds
    assert verdict.details["c3"] is False


@given(algebras(max_atoms=2))
@settings(max_examples=30, deadline=None)
def test_generated_algebras(alg):
    m = to_mma(alg)
    assert check_mma_axioms(m).holds
    assert to_conditional(m).cond == alg.cond
    assert mma_embedding_check(m).holds
    assert qa_equals_box_phi_check(alg).holds
    assert box_d_bridge_check(alg).holds
