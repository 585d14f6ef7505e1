"""
Point sequences and the reports computed from them.

On disk a PointSeq is ``{"n": int, "points": [[re, im, re, im, ...], ...], "meta": {...}}``.
"""

from typing import Annotated, Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, model_validator

from geometry.ball import BOUNDARY_TOL, UNIT_TOL, norm_sq


def _read_points(value: Any) -> np.ndarray:
    if isinstance(value, np.ndarray) and np.iscomplexobj(value):
        return value.astype(complex)
    rows = list(value)
    if not rows:
        return np.zeros((0, 0), dtype=complex)
    flat = np.asarray(rows, dtype=float)
    if flat.ndim != 2 or flat.shape[1] % 2:
        raise ValueError("each point must be a flat list of [re, im] pairs")
    return flat[:, 0::2] + 1j * flat[:, 1::2]


def _write_points(points: np.ndarray) -> List[List[float]]:
    out = np.empty((points.shape[0], 2 * points.shape[1]))
    out[:, 0::2] = points.real
    out[:, 1::2] = points.imag
    return out.tolist()


PointArray = Annotated[
    np.ndarray,
    BeforeValidator(_read_points),
    PlainSerializer(_write_points, return_type=list),
]


class PointSeq(BaseModel):
    """Finite sequence of distinct points of the open ball."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=1)
    points: PointArray
    meta: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_points(self):
        pts = self.points
        if pts.size == 0:
            object.__setattr__(self, "points", np.zeros((0, self.n), dtype=complex))
            return self
        if pts.ndim != 2 or pts.shape[1] != self.n:
            raise ValueError(f"points must have {self.n} complex coordinates each, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        if np.any(np.sqrt(norm_sq(pts)) > 1.0 - BOUNDARY_TOL):
            raise ValueError("points must lie in the open unit ball")
        if len(np.unique(np.ascontiguousarray(pts).view(float), axis=0)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        pts.setflags(write=False)
        return self

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def from_points(cls, points: Any, meta: Optional[Dict[str, Any]] = None) -> "PointSeq":
        array = np.atleast_2d(np.asarray(points, dtype=complex))
        return cls(n=array.shape[1], points=array.copy(), meta=dict(meta or {}))

    def subset(self, indices: Sequence[int], **meta: Any) -> "PointSeq":
        idx = [int(i) for i in indices]
        return PointSeq(
            n=self.n,
            points=self.points[idx].copy() if idx else np.zeros((0, self.n), dtype=complex),
            meta={**self.meta, **meta, "indices": idx},
        )


class KReport(BaseModel):
    """K(a, p, q) = max_k Σ_{j≠k} (1−|a_k|²)^p (1−|a_j|²)^q / |1 − ⟨a_j, a_k⟩|^{p+q}."""

    value: float
    argmax_k: Optional[int] = None
    per_k: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def _value_is_max(self):
        expected = max(self.per_k) if self.per_k else 0.0
        if self.value != expected:
            raise ValueError("K value must equal the largest row sum")
        return self


class PointMeasure(BaseModel):
    """Σ_k m_k δ_{a_k}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=1)
    points: PointArray
    masses: List[float]

    @model_validator(mode="after")
    def _aligned(self):
        if self.points.size == 0:
            object.__setattr__(self, "points", np.zeros((0, self.n), dtype=complex))
        if len(self.masses) != len(self.points):
            raise ValueError(f"{len(self.masses)} masses for {len(self.points)} points")
        if any(m < 0 for m in self.masses):
            raise ValueError("masses must be nonnegative")
        return self


class WindowSet(BaseModel):
    """Carleson windows C_t(ζ) for every centre ζ and radius t."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    centers: PointArray
    radii: List[float]

    @model_validator(mode="after")
    def _unit_centres(self):
        if self.centers.size and np.any(np.abs(np.sqrt(norm_sq(self.centers)) - 1.0) > UNIT_TOL):
            raise ValueError("window centres must lie on the unit sphere")
        if any(t <= 0 for t in self.radii):
            raise ValueError("window radii must be positive")
        return self


class Partition(BaseModel):
    first: List[int]
    second: List[int]
    bound: float                         # largest row sum M
    within: List[float]                  # Σ_{j in own class} A_jk per index k
