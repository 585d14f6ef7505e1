from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import RuntimeConfig
from geometry.models import Complex, Coords


class QuadratureMethod(str, Enum):
    PRODUCT = "product"
    MONTE_CARLO = "monte-carlo"
    QUASI_MONTE_CARLO = "quasi-monte-carlo"


class QuadratureSpec(BaseModel):
    """
    How an integral is computed. Identical specs give bit-identical estimates.

    ``pole`` flags a point a of the ball near which the integrand peaks like a
    power of |1 − ⟨z, a⟩|^{-1}; Monte Carlo methods then sample from a
    mixture of dm and the image of dm under φ_a.
    """

    model_config = ConfigDict(frozen=True)

    method: QuadratureMethod = QuadratureMethod.PRODUCT
    samples: int = Field(65536, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)
    target_rel_tol: float = Field(1e-3, gt=0)
    radial_nodes: int = Field(64, ge=2)
    pole: Optional[Coords] = None

    @field_validator("pole")
    @classmethod
    def _pole_interior(cls, pole):
        if pole is not None and float(np.sum(np.abs(np.asarray(pole)) ** 2)) >= 1.0:
            raise ValueError("pole centre must lie in the open unit ball")
        return pole

    def pole_array(self) -> Optional[np.ndarray]:
        return None if self.pole is None else np.asarray(self.pole, dtype=complex)

    def with_pole(self, pole) -> "QuadratureSpec":
        return self.model_copy(update={"pole": tuple(complex(c) for c in np.ravel(pole))})

    @classmethod
    def default(cls, **overrides) -> "QuadratureSpec":
        """Spec with the sample budget and seed taken from the environment."""
        values = {
            "samples": RuntimeConfig.get_default_samples(),
            "seed": RuntimeConfig.get_default_seed(),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class Estimate(BaseModel):
    """A numerical integral or norm with its error indication."""

    value: float
    stderr: float = Field(0.0, ge=0)
    samples_used: int = Field(0, ge=0)
    diagnostic: Optional[str] = None

    @model_validator(mode="after")
    def _finite(self):
        # a divergent result is only allowed together with its diagnostic
        if self.diagnostic is None and not (np.isfinite(self.value) and np.isfinite(self.stderr)):
            raise ValueError("estimate must be finite unless a diagnostic explains it")
        return self

    @property
    def diverged(self) -> bool:
        return not np.isfinite(self.value)


class ComplexEstimate(BaseModel):
    value: Complex
    stderr: float = Field(0.0, ge=0)
    samples_used: int = Field(0, ge=0)
