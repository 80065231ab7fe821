"""
Tests for ultrafilter frames, canonical extensions, the duality roundtrips
and the homomorphism correspondence.
"""
import pytest
from hypothesis import given, settings
from pydantic import ValidationError

from src.core.duality import (
    AlgHom, FrameMap, boolean_homs, boolean_maps_by_enumeration, cf_witness, co_es_roundtrip, dual_map, em,
    es_co_roundtrip, existence_lemma_check, hom_duality_check, hom_of_frame_map, representation_check,
    t_image_identity_check, t_prime_restriction_check, ultrafilter_frame,
)
from src.core.errors import ContractError
from src.core.generators import const_one, degenerate, glob
from src.core.hybrid_frames import TFrame
from strategies import algebras, frames


class TestUltrafilterFrame:
    def test_proj2(self, proj2, proj2_dual):
        assert ultrafilter_frame(proj2).triples == proj2_dual.triples

    def test_glob2_is_membership(self, glob2):
        frame = ultrafilter_frame(glob2)
        expected = tuple((u, z, v) for u in range(2) for z in range(4) for v in range(2) if z >> v & 1)
        assert frame.triples == tuple(sorted(expected))

    def test_requires_conditional_algebra(self, mutant):
        with pytest.raises(ContractError):
            ultrafilter_frame(mutant)

    def test_canonical_extension_of_finite_algebra(self, proj2, glob2):
        assert em(proj2).cond == proj2.cond
        assert em(glob2).cond == glob2.cond


class TestRoundtrips:
    def test_named(self, proj2, glob2, proj2_dual):
        assert representation_check(proj2).holds
        assert co_es_roundtrip(glob2).holds
        assert es_co_roundtrip(proj2_dual).holds

    def test_frame_roundtrip_requires_conditional_space(self):
        with pytest.raises(ContractError):
            es_co_roundtrip(TFrame(point_count=2, triples=[(0, 1, 0)]))

    @given(algebras(max_atoms=3))
    @settings(max_examples=40, deadline=None)
    def test_algebras(self, alg):
        assert representation_check(alg).holds
        assert co_es_roundtrip(alg).holds
        assert existence_lemma_check(alg).holds
        assert t_image_identity_check(alg).holds
        assert t_prime_restriction_check(alg).holds

    @given(frames())
    @settings(max_examples=40, deadline=None)
    def test_frames(self, f):
        assert es_co_roundtrip(f).holds


class TestHomomorphisms:
    def test_proj2_endomorphisms(self, proj2):
        homs = boolean_homs(proj2, proj2)
        assert len(homs) == 4
        assert sorted(h.map for h in homs) == sorted(boolean_maps_by_enumeration(proj2, proj2))

    def test_rejects_non_boolean_map(self, proj2):
        with pytest.raises(ValidationError):
            AlgHom(source=proj2, target=proj2, map=[0, 1, 1, 3])

    def test_identity_is_conditional(self, glob2):
        identity = AlgHom(source=glob2, target=glob2, map=[0, 1, 2, 3])
        verdict = hom_duality_check(identity)
        assert verdict.holds
        assert verdict.details["conditional"]
        assert verdict.details["recovers"]
        assert dual_map(identity).map == (0, 1)

    def test_non_conditional_hom_has_cf_witness(self, proj2, glob2):
        h = AlgHom(source=proj2, target=glob2, map=[0, 1, 2, 3])
        verdict = hom_duality_check(h)
        assert verdict.holds
        assert not verdict.details["conditional"]
        assert not verdict.details["cf"]
        assert cf_witness(dual_map(h)) is not None

    def test_frame_map_round_trip(self, proj2_dual):
        swap = FrameMap(source=proj2_dual, target=proj2_dual, map=(1, 0))
        h = hom_of_frame_map(swap)
        assert h.map == (0, 2, 1, 3)
        assert cf_witness(swap) is None

    def test_frame_map_out_of_range(self, proj2_dual):
        with pytest.raises(ValidationError):
            FrameMap(source=proj2_dual, target=proj2_dual, map=(0, 2))

    @given(algebras(max_atoms=2), algebras(max_atoms=2))
    @settings(max_examples=25, deadline=None)
    def test_every_boolean_hom(self, source, target):
        for h in boolean_homs(source, target):
            assert hom_duality_check(h).holds

    def test_glob_one_into_glob_two(self):
        homs = boolean_homs(glob(1), glob(2))
        assert len(homs) == 1
        assert homs[0].map == (0, 3)

    def test_degenerate_target(self):
        homs = boolean_homs(const_one(1), degenerate())
        assert [h.map for h in homs] == [(0, 0)]
        verdict = hom_duality_check(homs[0])
        assert verdict.holds
        assert verdict.details["conditional"]
        assert verdict.details["recovers"]
        assert dual_map(homs[0]).map == ()

    def test_no_hom_out_of_degenerate(self):
        assert boolean_homs(degenerate(), const_one(1)) == []
