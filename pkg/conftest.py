"""
Shared fixtures: the documents under fixtures/ and a few named algebras.
"""
import sys
from pathlib import Path

import pytest

# Add the project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.core.documents import load_algebra, load_frame  # noqa: E402
from src.core.generators import glob, proj, proj2_mutant  # noqa: E402

FIXTURES = project_root / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def proj2():
    return proj(2)


@pytest.fixture
def glob2():
    return glob(2)


@pytest.fixture
def mutant():
    return proj2_mutant()


@pytest.fixture
def proj2_dual():
    return load_frame(FIXTURES / "proj2_dual.json")


@pytest.fixture
def proj2_document():
    return load_algebra(FIXTURES / "proj2.json")


@pytest.fixture
def no_c3_star():
    """A CA member violating C3*: only the row of the top element moves."""
    from src.core.conditional_algebra import CondAlg
    from src.core.boolean_core import FinBoolAlg

    return CondAlg(
        base=FinBoolAlg(atom_count=2),
        cond=[[3, 3, 3, 3], [3, 3, 3, 3], [3, 3, 3, 3], [0, 1, 2, 3]],
    )
