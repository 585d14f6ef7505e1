"""
Invariant geometry of the unit ball of C^n.

All functions work on numpy complex arrays; single points are 1-d arrays
of length n, point clouds are (m, n) arrays.
"""

import math
from typing import Any, Optional

import numpy as np

from errors import PreconditionError

BOUNDARY_TOL = 1e-14
UNIT_TOL = 1e-12


def as_point(z: Any, n: Optional[int] = None) -> np.ndarray:
    point = np.asarray(z, dtype=complex).ravel()
    if point.size == 0:
        raise PreconditionError("a point needs at least one coordinate")
    if n is not None and point.size != n:
        raise PreconditionError(f"dimension mismatch: expected {n}, got {point.size}")
    if not np.all(np.isfinite(point)):
        raise PreconditionError("point has non-finite coordinates")
    return point


def as_points(points: Any, n: Optional[int] = None) -> np.ndarray:
    array = np.asarray(points, dtype=complex)
    if array.ndim == 1:
        array = array.reshape(1, -1) if n is None or array.size == n else array.reshape(-1, n)
    if array.ndim != 2:
        raise PreconditionError(f"expected an (m, n) point array, got shape {array.shape}")
    if n is not None and array.shape[1] != n and array.shape[0] > 0:
        raise PreconditionError(f"dimension mismatch: expected {n}, got {array.shape[1]}")
    if not np.all(np.isfinite(array)):
        raise PreconditionError("points have non-finite coordinates")
    return array


def norm_sq(points: np.ndarray) -> np.ndarray:
    """|z|^2 row-wise (or for a single point)."""
    return np.sum((points * points.conj()).real, axis=-1)


def require_interior(points: np.ndarray, what: str = "point") -> None:
    if np.any(np.sqrt(norm_sq(points)) > 1.0 - BOUNDARY_TOL):
        raise PreconditionError(f"{what} must lie in the open unit ball (|z| < 1 - {BOUNDARY_TOL})")


def require_unit(points: np.ndarray, what: str = "point") -> None:
    if np.any(np.abs(np.sqrt(norm_sq(points)) - 1.0) > UNIT_TOL):
        raise PreconditionError(f"{what} must lie on the unit sphere")


def herm_inner(z: Any, w: Any) -> complex:
    """z w̄ = Σ_j z_j conj(w_j)."""
    z = as_point(z)
    w = as_point(w, z.size)
    return complex(np.sum(z * w.conj()))


def herm_inner_many(points: np.ndarray, w: np.ndarray) -> np.ndarray:
    """⟨z, w⟩ for every row z; row results do not depend on the batch size."""
    return np.sum(points * w.conj(), axis=-1)


def automorphism_many(a: np.ndarray, points: np.ndarray) -> np.ndarray:
    """
    φ_a(z) = (a − P_a z − s_a Q_a z) / (1 − ⟨z, a⟩) for every row z.

    φ_0 is −Id.
    """
    aa = float(norm_sq(a))
    if aa == 0.0:
        return -points
    inner = herm_inner_many(points, a)
    projection = (inner / aa)[:, None] * a[None, :]
    s = math.sqrt(1.0 - aa)
    return (a[None, :] - projection - s * (points - projection)) / (1.0 - inner)[:, None]


def apply_automorphism(a: Any, z: Any) -> np.ndarray:
    a = as_point(a)
    z = as_point(z, a.size)
    require_interior(a, "automorphism centre")
    require_interior(z)
    return automorphism_many(a, z.reshape(1, -1))[0]


def _distance_sq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # |1−⟨a,b⟩|² − (1−|a|²)(1−|b|²) = |a−b|² + |⟨a,b⟩|² − |a|²|b|²
    inner = np.sum(a * b.conj(), axis=-1)
    diff = a - b
    numerator = norm_sq(diff) + np.abs(inner) ** 2 - norm_sq(a) * norm_sq(b)
    return np.clip(numerator, 0.0, None) / np.abs(1.0 - inner) ** 2


def inv_distance(a: Any, b: Any) -> float:
    """Pseudo-hyperbolic distance d(a, b) = |φ_a(b)|."""
    a = as_point(a)
    b = as_point(b, a.size)
    require_interior(a)
    require_interior(b)
    return float(math.sqrt(min(float(_distance_sq(a, b)), 1.0)))


def distance_complement(a: Any, b: Any) -> float:
    """1 − d(a,b)² = (1−|a|²)(1−|b|²)/|1−⟨a,b⟩|², computed directly."""
    a = as_point(a)
    b = as_point(b, a.size)
    return float((1.0 - norm_sq(a)) * (1.0 - norm_sq(b)) / abs(1.0 - np.sum(a * b.conj())) ** 2)


def pairwise_distances(points: np.ndarray, others: Optional[np.ndarray] = None) -> np.ndarray:
    """Matrix of invariant distances between the rows of two point arrays."""
    left = as_points(points)
    right = left if others is None else as_points(others, left.shape[1])
    if left.shape[0] == 0 or right.shape[0] == 0:
        return np.zeros((left.shape[0], right.shape[0]))
    d2 = _distance_sq(left[:, None, :], right[None, :, :])
    return np.sqrt(np.clip(d2, 0.0, 1.0))


def in_hyperbolic_ball(z: Any, center: Any, r: float) -> bool:
    if not 0.0 < r < 1.0:
        raise PreconditionError(f"hyperbolic radius must lie in (0, 1), got {r}")
    return inv_distance(z, center) < r


def in_window(z: Any, zeta0: Any, t: float) -> bool:
    """Carleson window C_t(ζ0) = {z : |1 − ⟨z, ζ0⟩| < t}."""
    if t <= 0:
        raise PreconditionError(f"window radius must be positive, got {t}")
    zeta0 = as_point(zeta0)
    require_unit(zeta0, "window centre")
    return abs(1.0 - herm_inner(z, zeta0)) < t


def in_koranyi_ball(zeta: Any, eta: Any, t: float) -> bool:
    """Korányi ball K(η, t) = {ζ ∈ S : |1 − ⟨ζ, η⟩| < t}."""
    if t <= 0:
        raise PreconditionError(f"Korányi radius must be positive, got {t}")
    zeta = as_point(zeta)
    eta = as_point(eta, zeta.size)
    require_unit(zeta, "ζ")
    require_unit(eta, "η")
    return abs(1.0 - herm_inner(zeta, eta)) < t


def quasi_triangle_defect(samples: Any) -> float:
    """
    Largest violation of |1−zw̄|^½ ≤ |1−zū|^½ + |1−uw̄|^½ over triples.

    ``samples`` has shape (k, 3, n) holding (z, u, w) in the closed ball.
    """
    triples = np.asarray(samples, dtype=complex)
    if triples.ndim != 3 or triples.shape[1] != 3:
        raise PreconditionError(f"expected (k, 3, n) triples, got shape {triples.shape}")
    if np.any(np.sqrt(norm_sq(triples)) > 1.0 + UNIT_TOL):
        raise PreconditionError("triples must lie in the closed unit ball")
    z, u, w = triples[:, 0], triples[:, 1], triples[:, 2]

    def rho(x, y):
        return np.sqrt(np.abs(1.0 - np.sum(x * y.conj(), axis=-1)))

    return float(np.max(rho(z, w) - rho(z, u) - rho(u, w)))


def tau_ball_volume(n: int, r: float) -> float:
    """τ(E(0, r)) = (r²/(1−r²))^n."""
    if not 0.0 <= r < 1.0:
        raise PreconditionError(f"hyperbolic radius must lie in [0, 1), got {r}")
    return (r * r / (1.0 - r * r)) ** n


def mobius_sum(x: float, y: float) -> float:
    """Upper bound d(a,c) ≤ (d(a,b) + d(b,c)) / (1 + d(a,b) d(b,c))."""
    return (x + y) / (1.0 + x * y)


def paired_distances(points: np.ndarray, others: np.ndarray) -> np.ndarray:
    """d(points[i], others[i]) row by row."""
    left = as_points(points)
    right = as_points(others, left.shape[1])
    if left.shape != right.shape:
        raise PreconditionError(f"paired arrays differ in shape: {left.shape} vs {right.shape}")
    return np.sqrt(np.clip(_distance_sq(left, right), 0.0, 1.0))
