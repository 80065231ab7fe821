"""
Acceptance checks run by the suite orchestrator.

Each check takes the shared corpus and its node config and returns a
``CheckOutcome``. Checks are registered by name; suite YAML files refer to
them through the ``check`` field of a node.
"""
from itertools import islice, product
from typing import Any, Callable, Dict, List, Optional, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, Field

from src.core.conditional_algebra import (
    CondAlg, check_axiom, check_CA, d_lemma_check, monotonicity_report, row_local_check,
)
from src.core.duality import (
    boolean_homs, boolean_maps_by_enumeration, co_es_roundtrip, es_co_roundtrip,
    existence_lemma_check, hom_duality_check, representation_check,
    t_image_identity_check, t_prime_restriction_check, ultrafilter_frame,
)
from src.core.errors import CondAlgError
from src.core.extensions import finite_collapse_check, smoothness_check
from src.core.generators import (
    NAMED_ALGEBRAS, c8_without_c6, enumerate_exhaustive, generate, generate_frame, glob, proj, proj2_mutant,
)
from src.core.hybrid_frames import (
    TFrame, check_conditional_space, frame_representation_check, literal_t3_check,
)
from src.core.models import AxiomId, CorpusConfig, FrameCondId, GeneratorKind, GenSpec, Verdict, VarietyTag
from src.core.multimodal import (
    box_d_bridge_check, box_injectivity_check, check_mma_axioms, mma_embedding_check, mma_roundtrip_check,
    q_monotonicity_check, qa_equals_box_phi_check, to_mma,
)
from src.core.search import search
from src.core.structure_theory import (
    congruence_duality_check, congruences, preceq_filter_lemma_check, subalgebra_duality_check,
    theta_meet_witness_check,
)
from src.core.varieties import (
    canonical_extension_closure_check, canonicity_check, c6_c8_entailment_search, classify_variety,
    correspondence_check, fundamental_lemma2_check, fundamental_lemma_check, is_upward_closed_tagset,
    lemma_t_middle_check, psb_s_relation,
)

logger = structlog.get_logger(__name__)

CA_AXIOMS = (AxiomId.C1, AxiomId.C2, AxiomId.C3)

# Ultrafilter frame of proj2, in canonical order
PROJ2_DUAL_TRIPLES = (
    (0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 3, 0),
    (1, 0, 1), (1, 1, 1), (1, 2, 1), (1, 3, 1),
)


class CorpusEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    algebra: CondAlg


class Corpus(BaseModel):
    """Algebras and frames shared by every check of a suite run."""

    algebras: List[CorpusEntry] = Field(default_factory=list)
    frames: List[TFrame] = Field(default_factory=list)

    def counts(self) -> Dict[str, int]:
        return {"algebras": len(self.algebras), "frames": len(self.frames)}


class CheckOutcome(BaseModel):
    samples: int = 0
    failures: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    detail: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def build_corpus(config: CorpusConfig, seed: int) -> Corpus:
    """Exhaustive CA members at the smallest sizes, the named algebras and
    the seeded structured samples; plus the random frame corpus."""
    corpus = Corpus()
    for n in range(config.exhaustive_max_atoms + 1):
        for index, alg in enumerate(enumerate_exhaustive(n, CA_AXIOMS)):
            corpus.algebras.append(CorpusEntry(label=f"exhaustive-n{n}-{index}", algebra=alg))
    for name, build in NAMED_ALGEBRAS.items():
        corpus.algebras.append(CorpusEntry(label=name, algebra=build()))
    corpus.algebras.append(CorpusEntry(label="c8_without_c6", algebra=c8_without_c6()))
    kinds, sizes = config.kinds, config.structured_atoms
    for index in range(config.structured_samples if kinds and sizes else 0):
        kind = kinds[index % len(kinds)]
        n = sizes[(index // len(kinds)) % len(sizes)]
        spec = GenSpec(kind=kind, min_atoms=n, max_atoms=n, seed=seed)
        corpus.algebras.append(CorpusEntry(label=f"{kind.value}-{index}", algebra=generate(spec, index)))
    if config.inject_mutants:
        corpus.algebras.append(CorpusEntry(label="proj2-mutant", algebra=proj2_mutant()))
    frame_spec = GenSpec(kind=GeneratorKind.FROM_FRAME, min_atoms=1, max_atoms=max(config.frame_max_points, 1), seed=seed)
    corpus.frames = [generate_frame(frame_spec, index) for index in range(config.frame_samples)]
    logger.info("Corpus built", seed=seed, **corpus.counts())
    return corpus


CheckFunction = Callable[[Corpus, Dict[str, Any]], CheckOutcome]
ACCEPTANCE_CHECKS: Dict[str, CheckFunction] = {}


def acceptance_check(name: str):
    def register(fn: CheckFunction) -> CheckFunction:
        ACCEPTANCE_CHECKS[name] = fn
        return fn
    return register


def _small(corpus: Corpus, config: Dict[str, Any]) -> List[CorpusEntry]:
    limit = config.get("max_atoms", 3)
    return [entry for entry in corpus.algebras if entry.algebra.atom_count <= limit]


def _over(items: List[Tuple[str, Any]], checks: List[Callable[[Any], Verdict]]) -> CheckOutcome:
    """Run every check on every item, counting failures and keeping the
    first counterexample."""
    outcome = CheckOutcome()
    for label, item in items:
        outcome.samples += 1
        for check in checks:
            try:
                verdict = check(item)
            except CondAlgError as e:
                verdict = Verdict.fail(getattr(check, "__name__", "check"), {"error": str(e)})
            if not verdict.holds:
                outcome.failures += 1
                if outcome.counterexample is None:
                    outcome.counterexample = {"sample": label, "law": verdict.law, **(verdict.counterexample or {})}
                break
    return outcome


def _algebras(entries: List[CorpusEntry]) -> List[Tuple[str, CondAlg]]:
    return [(entry.label, entry.algebra) for entry in entries]


def _frames(corpus: Corpus) -> List[Tuple[str, TFrame]]:
    return [(f"frame-{index}", frame) for index, frame in enumerate(corpus.frames)]


def _expect(outcome: CheckOutcome, condition: bool, label: str, **detail: Any) -> None:
    outcome.samples += 1
    if not condition:
        outcome.failures += 1
        if outcome.counterexample is None:
            outcome.counterexample = {"sample": label, **detail}


@acceptance_check("corpus_sanity")
def corpus_sanity(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    outcome = _over(_algebras(corpus.algebras), [check_CA])
    frames = _over(_frames(corpus), [check_conditional_space])
    outcome.samples += frames.samples
    outcome.failures += frames.failures
    outcome.counterexample = outcome.counterexample or frames.counterexample
    return outcome


@acceptance_check("proj2_dual_example")
def proj2_dual_example(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    outcome = CheckOutcome()
    triples = ultrafilter_frame(proj(2)).triples
    _expect(outcome, triples == PROJ2_DUAL_TRIPLES, "proj2", triples=[list(t) for t in triples])
    return outcome


@acceptance_check("exhaustive_baseline")
def exhaustive_baseline(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    outcome = CheckOutcome()
    found = search(GenSpec(kind=GeneratorKind.EXHAUSTIVE, min_atoms=1, max_atoms=1), CA_AXIOMS, limit=100)
    oracle = [
        table for table in product(range(2), repeat=4)
        if check_CA(CondAlg.from_function(1, lambda a, b: table[2 * a + b])).holds
    ]
    found_tables = [tuple(v for row in alg.cond for v in row) for alg in found]
    _expect(outcome, len(found) == 3, "exhaustive-n1", found=len(found))
    _expect(outcome, found_tables == oracle, "exhaustive-n1", oracle=[list(t) for t in oracle])
    c1_star = search(GenSpec(kind=GeneratorKind.EXHAUSTIVE, min_atoms=1, max_atoms=1),
                     CA_AXIOMS + (AxiomId.C1STAR,), limit=100)
    _expect(outcome, len(c1_star) == 2, "exhaustive-n1-C1star", found=len(c1_star))
    outcome.detail = {"algebras": len(found), "oracle": len(oracle), "with_c1star": len(c1_star)}
    return outcome


@acceptance_check("representation")
def representation(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    return _over(_algebras(corpus.algebras), [representation_check])


@acceptance_check("roundtrips")
def roundtrips(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    outcome = _over(_algebras(corpus.algebras), [co_es_roundtrip])
    frames = _over(_frames(corpus), [es_co_roundtrip, frame_representation_check, literal_t3_check])
    outcome.detail = {"algebras": outcome.samples, "frames": frames.samples}
    outcome.samples += frames.samples
    outcome.failures += frames.failures
    outcome.counterexample = outcome.counterexample or frames.counterexample
    return outcome


@acceptance_check("extensions")
def extensions(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    return _over(_algebras(_small(corpus, config)), [finite_collapse_check, smoothness_check])


def _mma_laws(alg: CondAlg) -> Verdict:
    m = to_mma(alg)
    for verdict in (check_mma_axioms(m), mma_embedding_check(m), box_injectivity_check(m)):
        if not verdict.holds:
            return verdict
    return Verdict.ok("mma_laws")


@acceptance_check("mma")
def mma(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    return _over(_algebras(_small(corpus, config)), [
        mma_roundtrip_check, _mma_laws, q_monotonicity_check, qa_equals_box_phi_check,
    ])


@acceptance_check("correspondence")
def correspondence(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    """Every axiom against its frame condition, and both outcomes of each
    axiom present in the corpus."""
    axioms = [AxiomId(a) for a in config.get("axioms", [a.value for a in (
        AxiomId.C1STAR, AxiomId.C3STAR, AxiomId.C4, AxiomId.C5, AxiomId.C6, AxiomId.C7, AxiomId.C8,
    )])]
    entries = _algebras(_small(corpus, config))
    outcome = CheckOutcome()
    for axiom in axioms:
        seen = set()

        def paired(alg: CondAlg, axiom=axiom) -> Verdict:
            verdict = correspondence_check(alg, axiom)
            seen.add(verdict.details.get("equation"))
            return verdict

        part = _over(entries, [paired])
        outcome.samples += part.samples
        outcome.failures += part.failures
        outcome.counterexample = outcome.counterexample or part.counterexample
        outcome.detail[axiom.value] = {"satisfied": True in seen, "violated": False in seen}
        if seen != {True, False}:
            outcome.failures += 1
            outcome.counterexample = outcome.counterexample or {"axiom": axiom.value, "coverage": sorted(seen)}
    return outcome


@acceptance_check("canonicity")
def canonicity(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    conditions = [FrameCondId(c) for c in config.get("conditions", [c.value for c in (
        FrameCondId.T3STAR, FrameCondId.T4, FrameCondId.T5, FrameCondId.T6, FrameCondId.T7, FrameCondId.T8,
    )])]
    checks = [
        (lambda f, cond=cond: canonicity_check(f, cond))
        for cond in conditions
    ]
    outcome = _over(_frames(corpus), checks)
    outcome.detail = {"conditions": [c.value for c in conditions]}
    return outcome


@acceptance_check("structure")
def structure(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    outcome = _over(
        _algebras(_small(corpus, config)),
        [subalgebra_duality_check, congruence_duality_check, preceq_filter_lemma_check, theta_meet_witness_check],
    )
    glob2_lattice = [c.Y.mask for c in congruences(glob(2))]
    proj2_lattice = [c.Y.mask for c in congruences(proj(2))]
    _expect(outcome, glob2_lattice == [0, 3], "glob2", congruences=glob2_lattice)
    _expect(outcome, len(proj2_lattice) == 4, "proj2", congruences=proj2_lattice)
    return outcome


@acceptance_check("variety_poset")
def variety_poset_check(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    def upward_closed(alg: CondAlg) -> Verdict:
        tags = classify_variety(alg)
        if not is_upward_closed_tagset(tags):
            return Verdict.fail("variety_poset", {"tags": sorted(t.value for t in tags)})
        return Verdict.ok("variety_poset")

    outcome = _over(_algebras(corpus.algebras), [upward_closed, canonical_extension_closure_check])
    _expect(outcome, classify_variety(glob(2)) == set(VarietyTag), "glob2")
    _expect(outcome, classify_variety(proj(2)) == {VarietyTag.CA}, "proj2")
    return outcome


@acceptance_check("mutation")
def mutation(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    outcome = CheckOutcome()
    verdict = check_CA(proj2_mutant())
    _expect(
        outcome,
        not verdict.holds and verdict.details.get("axiom") == "C2"
        and verdict.counterexample == {"a": 1, "b": 0, "c": 2},
        "proj2-mutant",
        verdict=verdict.summary(),
    )
    outcome.detail = verdict.summary()
    return outcome


@acceptance_check("lemmas")
def lemmas(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    def fundamental(alg: CondAlg) -> Verdict:
        if check_axiom(alg, AxiomId.C3STAR).holds:
            return fundamental_lemma_check(alg)
        return Verdict.ok("fundamental_lemma", skipped=True)

    def s_relation(alg: CondAlg) -> Verdict:
        if VarietyTag.PSB in classify_variety(alg):
            psb_s_relation(alg)
        return Verdict.ok("psb_s_relation")

    return _over(_algebras(_small(corpus, config)), [
        row_local_check, monotonicity_report, d_lemma_check, existence_lemma_check,
        t_image_identity_check, t_prime_restriction_check, box_d_bridge_check, lemma_t_middle_check, fundamental,
        fundamental_lemma2_check, s_relation,
    ])


@acceptance_check("homomorphisms")
def homomorphisms(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    """Every Boolean homomorphism between pairs of small corpus algebras
    against its dual map."""
    limit = config.get("algebras", 12)
    small = [e.algebra for e in corpus.algebras if 1 <= e.algebra.atom_count <= config.get("max_atoms", 2)]
    pool = list(islice(small, limit))
    homs = [
        (f"hom-{i}-{j}-{k}", h)
        for i, source in enumerate(pool)
        for j, target in enumerate(pool)
        for k, h in enumerate(boolean_homs(source, target))
    ]
    outcome = _over(homs, [hom_duality_check])
    maps = boolean_maps_by_enumeration(proj(2), proj(2))
    _expect(outcome, len(maps) == 4, "proj2-endomorphisms", maps=len(maps))
    return outcome


@acceptance_check("c6_c8")
def c6_c8(corpus: Corpus, config: Dict[str, Any]) -> CheckOutcome:
    outcome = CheckOutcome()
    verdict = c6_c8_entailment_search(
        samples=config.get("samples", 500), seed=config.get("seed", 0), atoms=config.get("atoms", 2)
    )
    _expect(outcome, verdict.holds, "c6_entails_c8", **(verdict.counterexample or {}))
    _expect(outcome, verdict.details.get("c8_without_c6") is not None, "c8_without_c6")
    outcome.detail = {"psb_samples": verdict.details.get("psb_samples")}
    return outcome
