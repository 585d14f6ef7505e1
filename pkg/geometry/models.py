"""
Pydantic types for points and automorphisms of the unit ball.

Complex numbers travel through JSON as ``[re, im]`` pairs.
"""

from typing import Annotated, Any, Optional, Tuple

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer

from geometry.ball import automorphism_many


def _to_complex(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex pair must have two entries, got {len(value)}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (complex, float, int, np.number)):
        return complex(value)
    raise ValueError(f"cannot read {value!r} as a complex number")


Complex = Annotated[
    complex,
    BeforeValidator(_to_complex),
    PlainSerializer(lambda c: [c.real, c.imag], return_type=list),
]

Coords = Tuple[Complex, ...]


def coords_of(array: Any) -> Tuple[complex, ...]:
    """Plain tuple of Python complex numbers from any 1-d array-like."""
    return tuple(complex(c) for c in np.asarray(array, dtype=complex).ravel())


class Automorphism(BaseModel):
    """
    Ball automorphism z ↦ φ_a(U z).

    ``center`` is a (|a| < 1); ``rotation`` is the unitary U, identity when
    omitted. With a = 0 and no rotation this is φ_0 = −Id.
    """

    model_config = ConfigDict(frozen=True)

    center: Coords
    rotation: Optional[Tuple[Coords, ...]] = None

    @property
    def dimension(self) -> int:
        return len(self.center)

    def center_array(self) -> np.ndarray:
        return np.asarray(self.center, dtype=complex)

    def rotation_array(self) -> Optional[np.ndarray]:
        if self.rotation is None:
            return None
        return np.asarray(self.rotation, dtype=complex)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        u = self.rotation_array()
        if u is not None:
            pts = pts @ u.T
        return automorphism_many(self.center_array(), pts)

    def inverse(self) -> "Automorphism":
        """φ_a∘U has inverse U^H∘φ_a = φ_{U^H a}∘U^H."""
        u = self.rotation_array()
        if u is None:
            return self
        uh = u.conj().T
        return Automorphism(
            center=coords_of(uh @ self.center_array()),
            rotation=tuple(coords_of(row) for row in uh),
        )

    def preimage_of_origin(self) -> np.ndarray:
        u = self.rotation_array()
        a = self.center_array()
        return a if u is None else u.conj().T @ a

    @classmethod
    def involution(cls, a: Any) -> "Automorphism":
        return cls(center=coords_of(a))

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        minus_id = -np.eye(n, dtype=complex)
        return cls(center=(0j,) * n, rotation=tuple(coords_of(row) for row in minus_id))

    def is_identity(self) -> bool:
        u = self.rotation_array()
        return (
            u is not None
            and not np.any(self.center_array())
            and np.array_equal(u, -np.eye(self.dimension))
        )
