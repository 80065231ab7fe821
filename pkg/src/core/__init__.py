from .conditional_algebra import CondAlg
from .hybrid_frames import TFrame
from .orchestrator import SuiteOrchestrator
from .registry import LawRegistry

__all__ = [
    "CondAlg",
    "TFrame",
    "SuiteOrchestrator",
    "LawRegistry",
]
