"""
Hypothesis strategies drawing algebras and frames from the seeded generators.
"""
from hypothesis import strategies as st

from src.core.generators import generate, generate_frame
from src.core.models import GeneratorKind, GenSpec

STRUCTURED_KINDS = (
    GeneratorKind.FROM_FRAME,
    GeneratorKind.STRICT_IMPLICATION,
    GeneratorKind.RANDOM_TABLE,
    GeneratorKind.PROJECTION,
)


def _generated(kind, n, seed, index):
    return generate(GenSpec(kind=kind, min_atoms=n, max_atoms=n, seed=seed), index)


def algebras(min_atoms=1, max_atoms=2, kinds=STRUCTURED_KINDS):
    return st.builds(
        _generated,
        st.sampled_from(kinds),
        st.integers(min_atoms, max_atoms),
        st.integers(0, 2 ** 16),
        st.integers(0, 1000),
    )


def frames(max_points=3):
    return st.builds(
        lambda seed, index: generate_frame(
            GenSpec(kind=GeneratorKind.FROM_FRAME, min_atoms=1, max_atoms=max_points, seed=seed), index
        ),
        st.integers(0, 2 ** 16),
        st.integers(0, 1000),
    )


def subsets(atom_count):
    return st.integers(0, (1 << atom_count) - 1)
