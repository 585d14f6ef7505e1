from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from geometry.models import Complex
from spaces.functions import AnalyticFunction
from spaces.models import NormEstimate


class SolveMethod(str, Enum):
    NEUMANN = "neumann"
    DIRECT = "direct"


class ExtensionParams(BaseModel):
    """
    Exponents of the approximate extension E(v)(z) = Σ_k v_k ((1−|a_k|²)/(1−⟨z,a_k⟩))^s.

    ``m`` only enters s when p = 1.
    """

    model_config = ConfigDict(frozen=True)

    m: float = Field(gt=0)
    s: float


class AugmentStep(BaseModel):
    point: Tuple[Complex, ...]
    value: Complex
    correction: Complex                  # v₀ − g(b)
    min_node_modulus: float              # smallest |φ_b(a_k)|


class SolveReport(BaseModel):
    interpolant: AnalyticFunction
    coefficients: Tuple[Complex, ...]
    residual_max: float = Field(ge=0)
    te_deviation: float
    te_norm_estimate: Optional[float] = None
    iterations: int = Field(ge=0)
    contraction: Optional[float] = None
    norm_estimate: Optional[NormEstimate] = None
    value_norm: float = 0.0
    method: SolveMethod
    extension: ExtensionParams
    steps: List[AugmentStep] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class DualFamily(BaseModel):
    functions: List[AnalyticFunction]
    norms: List[float] = Field(default_factory=list)
    constant: Optional[float] = None


class CriterionReport(BaseModel):
    """Outcome of a sufficient interpolation test built from K values."""

    name: str
    values: Dict[str, float]
    satisfied: bool
