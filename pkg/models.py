"""
Type definitions shared by the command-line steps.
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class Command(str, Enum):
    GEN = "gen"
    SEP = "sep"
    KVAL = "kval"
    SUPZ = "supz"
    CARLESON = "carleson"
    BETA_TEST = "beta-test"
    MILLS = "mills"
    SPLIT = "split"
    NORM = "norm"
    INTERP = "interp"
    DUALS = "duals"
    TRANSFER = "transfer"
    ADD_POINTS = "add-points"
    STABILITY = "stability"
    DENSITY = "density"
    VERDICT = "verdict"
    VANISH = "vanish"
    SWEEP = "sweep"


class ErrorCategory(str, Enum):
    CONFIG = "config"
    IO = "io"
    JSON = "json"
    VALIDATION = "validation"
    PRECONDITION = "precondition"
    NUMERICAL = "numerical"
    UNKNOWN = "unknown"


EXIT_CODES: Dict[ErrorCategory, int] = {
    ErrorCategory.CONFIG: 2,
    ErrorCategory.IO: 2,
    ErrorCategory.JSON: 2,
    ErrorCategory.VALIDATION: 2,
    ErrorCategory.PRECONDITION: 2,
    ErrorCategory.NUMERICAL: 3,
    ErrorCategory.UNKNOWN: 3,
}


class RunError(BaseModel):
    origin: str                          # which step raised it, e.g. "InterpolateStep"
    category: ErrorCategory
    message: str
    retryable: bool = False
    context: Dict[str, Any] = Field(default_factory=dict)


class RunConfig(BaseModel):
    """Resolved configuration of one command-line run."""

    model_config = ConfigDict(frozen=True)

    command: Command
    input: Optional[str] = Field(None, description="PointSeq JSON (or matrix / function JSON)")
    values: Optional[str] = Field(None, description="Value-sequence JSON aligned with the input")
    output: Optional[str] = None
    seed: int = 0
    n: int = 1
    p: float = 2.0
    alpha: float = 0.0
    m: Optional[float] = None
    q: Optional[float] = None
    beta: Optional[float] = None
    r: float = 0.5
    layers: int = 3
    delta: float = 0.01
    target: Optional[float] = None
    kappa: float = 2.0
    gamma: Optional[float] = None
    samples: Optional[int] = None
    method: Optional[str] = None
    grid: List[float] = Field(default_factory=list)
    extra: Optional[str] = None
    perturbed: Optional[str] = None
    p_target: Optional[float] = None
    alpha_target: Optional[float] = None
    lam: Optional[str] = None
    function: Optional[str] = None
    trials: int = 5
    param: Optional[str] = None
    stat: Optional[str] = None


class RunReport(BaseModel):
    """Envelope written for every run; validated by schemas/report.schema.json."""

    command: str
    status: str
    config: Dict[str, Any]
    result: Optional[Any] = None
    error: Optional[RunError] = None
