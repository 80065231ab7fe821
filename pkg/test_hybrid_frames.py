"""
Tests for ternary hybrid frames and their complex algebras.
"""
import pytest
from hypothesis import given, settings
from pydantic import ValidationError

from src.core.hybrid_frames import (
    TFrame, check_conditional_space, cm, frame_representation_check, is_upward_closed, literal_t3_check,
    t_image, t_prime_relation, upward_closure,
)
from strategies import frames


def test_triples_are_canonical():
    f = TFrame(point_count=2, triples=[(1, 2, 1), (0, 1, 0), (1, 2, 1)])
    assert f.triples == ((0, 1, 0), (1, 2, 1))


@pytest.mark.parametrize("triple", [(2, 0, 0), (0, 0, 2), (0, 4, 0)])
def test_triples_out_of_range(triple):
    with pytest.raises(ValidationError):
        TFrame(point_count=2, triples=[triple])


def test_image(proj2_dual):
    assert proj2_dual.image[0] == (1, 1, 1, 1)
    assert t_image(proj2_dual, 1, 0) == 2
    assert proj2_dual.related(1, 3, 1)
    assert not proj2_dual.related(1, 3, 0)


def test_complex_algebra_of_proj2_dual(proj2_dual, proj2):
    assert cm(proj2_dual).cond == proj2.cond


def test_complex_algebra_of_membership_frame(glob2):
    # T(u, Z, v) iff v ∈ Z
    f = TFrame(point_count=2, triples=[(u, z, v) for u in range(2) for z in range(4) for v in range(2) if z >> v & 1])
    assert cm(f).cond == glob2.cond


def test_empty_frame_gives_constant_top():
    assert cm(TFrame(point_count=2)).cond == ((3, 3, 3, 3),) * 4


def test_upward_closure():
    f = TFrame(point_count=2, triples=[(0, 1, 0)])
    assert not is_upward_closed(f)
    closed = upward_closure(f)
    assert closed.triples == ((0, 1, 0), (0, 3, 0))
    assert is_upward_closed(closed)


def test_conditional_space_counterexample():
    verdict = check_conditional_space(TFrame(point_count=2, triples=[(0, 1, 0)]))
    assert not verdict.holds
    assert verdict.counterexample == {"x": 0, "Z": 1, "y": 0, "U": 3}


def test_literal_t3():
    f = TFrame(point_count=2, triples=[(0, 1, 0)])
    assert literal_t3_check(f).counterexample == {"x": 0, "Y": 1, "y": 0}
    assert literal_t3_check(upward_closure(f)).holds


def test_complex_algebra_ignores_missing_supersets():
    f = TFrame(point_count=2, triples=[(0, 1, 0), (1, 2, 0)])
    assert cm(f).cond == cm(upward_closure(f)).cond


def test_t_prime_of_proj2(proj2, proj2_dual):
    assert t_prime_relation(proj2).triples == proj2_dual.triples


@given(frames())
@settings(max_examples=40, deadline=None)
def test_frame_representation(f):
    assert is_upward_closed(f)
    assert frame_representation_check(f).holds
    assert literal_t3_check(f).holds


@given(frames())
@settings(max_examples=40, deadline=None)
def test_representation_of_unclosed_restriction(f):
    # dropping triples breaks closure but not the embedding into the closure
    thinned = TFrame(point_count=f.point_count, triples=f.triples[::2])
    assert frame_representation_check(thinned).holds
