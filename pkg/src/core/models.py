"""
Pydantic models shared across the toolkit: law identifiers, verdicts, file
documents, generator specs, suite definitions and reports.
"""
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictInt, field_validator

from src.core.errors import InputError


# Enums
class AxiomId(str, Enum):
    """Equational laws that can be checked on a conditional algebra"""
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C1STAR = "C1star"
    C3STAR = "C3star"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"
    C7 = "C7"
    C8 = "C8"
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"

class FrameCondId(str, Enum):
    """Quantified conditions on ternary hybrid frames"""
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"
    A7 = "A7"
    A8 = "A8"
    PSB_WITNESS = "PSBwitness"
    NON_EMPTY_MIDDLE = "NonEmptyMiddle"
    T3STAR = "T3star"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"
    T7 = "T7"
    T8 = "T8"

class VarietyTag(str, Enum):
    """Subvarieties of conditional algebras"""
    CA = "CA"
    PSB = "PSB"
    PSC = "PsC"
    SIA = "SIA"
    S2IA = "S2IA"

class GeneratorKind(str, Enum):
    """Ways of producing candidate algebras"""
    EXHAUSTIVE = "exhaustive"
    RANDOM_TABLE = "random-table"
    FROM_FRAME = "from-frame"
    STRICT_IMPLICATION = "strict-implication-family"
    PROJECTION = "projection-family"

class CheckStatus(str, Enum):
    """Status of a suite check"""
    PENDING = "pending"
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"
    ERROR = "error"


def parse_axiom_id(value: str) -> AxiomId:
    try:
        return AxiomId(value)
    except ValueError:
        raise InputError(f"unknown axiom id {value!r}")


def parse_frame_cond_id(value: str) -> FrameCondId:
    try:
        return FrameCondId(value)
    except ValueError:
        raise InputError(f"unknown frame condition id {value!r}")


# Verdicts
class Verdict(BaseModel):
    """Outcome of a checked law: holds, or fails with the least counterexample"""
    model_config = ConfigDict(frozen=True)

    law: str
    holds: bool
    counterexample: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def ok(cls, law: str, **details: Any) -> "Verdict":
        return cls(law=law, holds=True, details=details)

    @classmethod
    def fail(cls, law: str, counterexample: Dict[str, Any], **details: Any) -> "Verdict":
        return cls(law=law, holds=False, counterexample=counterexample, details=details)

    def summary(self) -> Dict[str, Any]:
        entry: Dict[str, Any] = {"law": self.law, "holds": self.holds}
        if self.counterexample is not None:
            entry["counterexample"] = self.counterexample
        return entry


# Documents
class AlgebraDocument(BaseModel):
    """On-disk form of a conditional algebra"""
    type: Literal["conditional-algebra"] = "conditional-algebra"
    atoms: StrictInt = Field(ge=0)
    cond: List[List[StrictInt]]

class FrameDocument(BaseModel):
    """On-disk form of a ternary hybrid frame"""
    type: Literal["t-frame"] = "t-frame"
    points: StrictInt = Field(ge=0)
    triples: List[Tuple[StrictInt, StrictInt, StrictInt]] = Field(default_factory=list)


# Generators
class GenSpec(BaseModel):
    """What to generate: a pure function of (kind, bounds, seed)"""
    model_config = ConfigDict(frozen=True)

    kind: GeneratorKind
    min_atoms: int = Field(default=1, ge=0)
    max_atoms: int = Field(default=3, ge=0)
    seed: int = 0

    @field_validator("max_atoms")
    @classmethod
    def _bounds_ordered(cls, value: int, info) -> int:
        low = info.data.get("min_atoms", 0)
        if value < low:
            raise ValueError(f"max_atoms {value} is below min_atoms {low}")
        return value


# Suite models
class CorpusConfig(BaseModel):
    """Sizes and generator mix of the verification corpus"""
    exhaustive_max_atoms: int = Field(default=1, ge=0, le=1)
    structured_samples: int = Field(default=1000, ge=0)
    structured_atoms: List[int] = Field(default_factory=lambda: [2, 3])
    kinds: List[GeneratorKind] = Field(default_factory=lambda: [
        GeneratorKind.FROM_FRAME,
        GeneratorKind.STRICT_IMPLICATION,
        GeneratorKind.RANDOM_TABLE,
        GeneratorKind.PROJECTION,
    ])
    frame_samples: int = Field(default=500, ge=0)
    frame_max_points: int = Field(default=4, ge=0, le=6)
    inject_mutants: bool = False

class SuiteCheck(BaseModel):
    """A node in a suite definition"""
    id: str
    check: str
    depends_on: List[str] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)

class SuiteDefinition(BaseModel):
    """Complete verification suite definition"""
    suite_id: str
    name: str
    description: str = ""
    version: str = "1.0.0"
    seed: int = 0
    corpus: CorpusConfig = Field(default_factory=CorpusConfig)
    checks: List[SuiteCheck]
    metadata: Dict[str, Any] = Field(default_factory=dict)

class CheckResult(BaseModel):
    """Result from running a single suite check"""
    check_id: str
    check: str
    status: CheckStatus = CheckStatus.PENDING
    samples: int = 0
    failures: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    detail: Dict[str, Any] = Field(default_factory=dict)
    error_message: Optional[str] = None
    elapsed_ms: Optional[int] = None

class SuiteReport(BaseModel):
    """Machine-readable outcome of a suite run"""
    suite_id: str
    seed: int
    passed: bool
    corpus: Dict[str, int] = Field(default_factory=dict)
    results: List[CheckResult] = Field(default_factory=list)
    elapsed_ms: int = 0
    started_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))

class CommandReport(BaseModel):
    """JSON output of a single command invocation"""
    command: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    verdicts: List[Dict[str, Any]] = Field(default_factory=list)
    seed: Optional[int] = None
    elapsed_ms: int = 0
    result: Optional[Any] = None
