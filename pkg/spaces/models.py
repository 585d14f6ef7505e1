import math
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from errors import PreconditionError
from geometry.models import Complex
from quadrature.models import Estimate

# |α + 1/p| below this counts as the Hardy line
HARDY_TOL = 1e-12


class SpaceKind(str, Enum):
    BERGMAN = "bergman"
    HARDY = "hardy"
    GROWTH = "growth"


class InclusionVerdict(str, Enum):
    INCLUDED = "included"
    NOT_INCLUDED = "not-included"
    UNDETERMINED = "undetermined"


class SpaceParams(BaseModel):
    """(n, p, α) for B_α^p; p = ∞ gives the growth space, α = −1/p the Hardy space."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(1, ge=1)
    p: float = 2.0
    alpha: float = 0.0

    @field_validator("p")
    @classmethod
    def _p_positive(cls, p: float) -> float:
        if not p > 0:
            raise ValueError(f"p must be positive, got {p}")
        return p

    @model_validator(mode="after")
    def _alpha_range(self):
        if self.alpha < -self.inv_p - HARDY_TOL:
            raise ValueError(f"alpha must be >= -1/p = {-self.inv_p}, got {self.alpha}")
        return self

    @property
    def inv_p(self) -> float:
        return 0.0 if math.isinf(self.p) else 1.0 / self.p

    @property
    def kind(self) -> SpaceKind:
        if math.isinf(self.p):
            return SpaceKind.GROWTH
        if abs(self.alpha + self.inv_p) <= HARDY_TOL:
            return SpaceKind.HARDY
        return SpaceKind.BERGMAN

    @property
    def beta(self) -> float:
        """β = (n+1)/p + α, the weight exponent of the value space ℓ^p_β."""
        return (self.n + 1) * self.inv_p + self.alpha

    @property
    def weight_exponent(self) -> float:
        """αp, the exponent of (1−|z|²) in the integral norm."""
        return self.alpha * self.p

    @property
    def smoothness(self) -> float:
        """α + 1/p."""
        return self.alpha + self.inv_p

    def conjugate(self) -> "SpaceParams":
        """Dual pair (q, αp/q) with 1/p + 1/q = 1, for 1 < p < ∞."""
        if not 1.0 < self.p < math.inf:
            raise PreconditionError(f"conjugate exponent needs 1 < p < inf, got {self.p}")
        q = self.p / (self.p - 1.0)
        return SpaceParams(n=self.n, p=q, alpha=self.alpha * self.p / q)


class ValueSeq(BaseModel):
    """Targets v_k aligned with a point sequence, measured in ℓ^p_β."""

    values: Tuple[Complex, ...]
    params: SpaceParams
    norm: Optional[float] = None

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=complex)


class NormEstimate(Estimate):
    kind: SpaceKind
    lower_bound: bool = False
    refinement_stable: bool = True


class HardyProfile(BaseModel):
    radii: List[float]
    values: List[float]
    monotone: bool
