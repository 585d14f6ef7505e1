from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from geometry.models import Complex
from spaces.models import NormEstimate


class Verdict(str, Enum):
    INTERPOLATING = "interpolating"
    NOT_INTERPOLATING = "not-interpolating"
    INCONCLUSIVE = "inconclusive"


class DensityReport(BaseModel):
    """
    Truncated upper uniform density: per radius r the grid sup over z of
    Σ_{1/2<|φ_z(a_k)|<r} log(1/|φ_z(a_k)|), divided by log(1/(1−r)).
    """

    density: float = Field(ge=0)
    r_profile: List[Tuple[float, float]]
    z_argmax: Optional[Complex] = None
    trend_slope: Optional[float] = None   # per doubling of 1/(1−r), over the last radii
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _profile_sane(self):
        for r, value in self.r_profile:
            if not 0.0 < r < 1.0 or not value >= 0.0:
                raise ValueError(f"bad profile entry ({r}, {value})")
        return self


class VanishingReport(BaseModel):
    node_residual: float                  # max_k |f(a_k)|
    value_at_origin: Complex
    norm_estimate: Optional[NormEstimate] = None
    reciprocal_norm: float                # ‖{1/a_k}‖ in ℓ^p_β
    constant_estimate: Optional[float] = None
    bound: Optional[float] = None         # 1 + M̂·‖{1/a_k}‖
