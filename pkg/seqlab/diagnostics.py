"""
Separation, K-functionals and Carleson-measure tests for point sequences.

Row sums are reduced with math.fsum in index order, so the results do not
depend on how rows are spread over workers.
"""

import math
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from errors import PreconditionError
from geometry.ball import as_points, norm_sq, pairwise_distances, require_interior
from geometry.models import Automorphism
from quadrature.sampling import unit_directions
from seqlab.models import KReport, PointMeasure, PointSeq, WindowSet
from seqlab.nets import apply_automorphism_to_seq, probe_grid
from utils.parallel import chunk_ranges, ordered_map

ROW_CHUNK = 256


def separation(seq: PointSeq) -> float:
    """min_{j≠k} d(a_j, a_k); +inf with fewer than two points."""
    if len(seq) < 2:
        return math.inf
    d = pairwise_distances(seq.points)
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def k_matrix(points: np.ndarray, p: float, q: float, rows: Optional[range] = None) -> np.ndarray:
    """
    W_kj = (1−|a_k|²)^p (1−|a_j|²)^q / |1 − ⟨a_j, a_k⟩|^{p+q} for j ≠ k, zero on
    the diagonal; restricted to the given rows.
    """
    rows = range(len(points)) if rows is None else rows
    a_rows = points[rows.start : rows.stop]
    weights = 1.0 - norm_sq(points)
    inner = np.sum(a_rows[:, None, :] * points[None, :, :].conj(), axis=-1)
    w = (weights[rows.start : rows.stop, None] ** p) * (weights[None, :] ** q) / np.abs(1.0 - inner) ** (p + q)
    w[np.arange(len(a_rows)), np.arange(rows.start, rows.stop)] = 0.0
    return w


def _check_exponents(p: float, q: float) -> None:
    if not (p > 0 and q > 0 and math.isfinite(p) and math.isfinite(q)):
        raise PreconditionError(f"K exponents must be positive reals, got p={p}, q={q}")


def k_rows(points: np.ndarray, p: float, q: float) -> List[float]:
    def chunk_sums(rows: range) -> List[float]:
        block = k_matrix(points, p, q, rows)
        return [math.fsum(row) for row in block]

    return [s for part in ordered_map(chunk_sums, chunk_ranges(len(points), ROW_CHUNK)) for s in part]


def k_value(seq: PointSeq, p: float, q: float) -> KReport:
    _check_exponents(p, q)
    per_k = k_rows(seq.points, p, q) if len(seq) else []
    if not per_k:
        return KReport(value=0.0, argmax_k=None, per_k=[])
    argmax = int(np.argmax(per_k))
    return KReport(value=per_k[argmax], argmax_k=argmax, per_k=per_k)


def sup_z_k_value(seq: PointSeq, p: float, q: float, z_grid: Any) -> float:
    """max over the grid of Σ_k (1−|z|²)^p (1−|a_k|²)^q / |1 − ⟨a_k, z⟩|^{p+q}."""
    _check_exponents(p, q)
    if len(seq) == 0:
        return 0.0
    grid = as_points(z_grid, seq.n)
    require_interior(grid, "grid point")
    weights = (1.0 - norm_sq(seq.points)) ** q

    def chunk_max(rows: range) -> float:
        z = grid[rows.start : rows.stop]
        inner = z @ seq.points.conj().T
        terms = ((1.0 - norm_sq(z))[:, None] ** p) * weights[None, :] / np.abs(1.0 - inner) ** (p + q)
        return max(math.fsum(row) for row in terms)

    return max(ordered_map(chunk_max, chunk_ranges(len(grid), ROW_CHUNK)))


def automorphic_k_value(seq: PointSeq, p: float, q: float, centers: Any) -> Tuple[float, Optional[int]]:
    """
    min over the identity and φ_c, c in ``centers``, of K(φ_c(a), p, q).

    Returns the value and the index of the best centre (None for the identity).
    """
    best, best_index = k_value(seq, p, q).value, None
    for i, c in enumerate(as_points(centers, seq.n)):
        value = k_value(apply_automorphism_to_seq(seq, Automorphism.involution(c)), p, q).value
        if value < best:
            best, best_index = value, i
    return best, best_index


# ---------- Carleson measures ----------
def sequence_measure(seq: PointSeq, q: float) -> PointMeasure:
    """Σ_k (1−|a_k|²)^q δ_{a_k}."""
    masses = ((1.0 - norm_sq(seq.points)) ** q).tolist() if len(seq) else []
    return PointMeasure(n=seq.n, points=seq.points.copy(), masses=masses)


def default_windows(points: np.ndarray, n: int, levels: int = 12, count: int = 64, seed: int = 0) -> WindowSet:
    """
    Centres: a low-discrepancy boundary set plus the radial projections of the
    nonzero sequence points. Radii t = 2^{−j}, j = −1 … levels.
    """
    centers = unit_directions(n, count, seed)
    if len(points):
        lengths = np.sqrt(norm_sq(points))
        nonzero = lengths > 0
        centers = np.concatenate([centers, points[nonzero] / lengths[nonzero][:, None]])
    return WindowSet(centers=centers, radii=[2.0**-j for j in range(-1, levels + 1)])


def carleson_ratio(measure: PointMeasure, q: float, windows: WindowSet) -> float:
    """max over windows of ν(C_t(ζ)) / t^q."""
    if len(measure.points) == 0 or not windows.radii:
        return 0.0
    masses = np.asarray(measure.masses)
    gaps = np.abs(1.0 - measure.points @ windows.centers.conj().T)  # (points, centres)
    best = 0.0
    for t in windows.radii:
        inside = gaps < t
        window_mass = masses @ inside
        best = max(best, float(window_mass.max()) / t**q)
    return best


def carleson_beta_test(measure: PointMeasure, beta: float, b_grid: Optional[Any] = None) -> float:
    """
    sup over b of Σ_k (1−|b|²)^{2β−n} m_k / |1 − ⟨b, a_k⟩|^{2β}, for β > n/2.
    """
    n = measure.n
    if not beta > n / 2:
        raise PreconditionError(f"beta must exceed n/2 = {n / 2}, got {beta}")
    if len(measure.points) == 0:
        return 0.0
    grid = probe_grid(n, extra=measure.points) if b_grid is None else as_points(b_grid, n)
    require_interior(grid, "grid point")
    masses = np.asarray(measure.masses)

    def chunk_max(rows: range) -> float:
        b = grid[rows.start : rows.stop]
        inner = b @ measure.points.conj().T
        terms = ((1.0 - norm_sq(b))[:, None] ** (2 * beta - n)) * masses[None, :] / np.abs(1.0 - inner) ** (2 * beta)
        return max(math.fsum(row) for row in terms)

    return max(ordered_map(chunk_max, chunk_ranges(len(grid), ROW_CHUNK)))


def carleson_profile(measure: PointMeasure, q: float, windows: WindowSet, levels: Sequence[int]) -> List[float]:
    """carleson_ratio restricted to radii ≥ 2^{−L}, for each L in ``levels``."""
    out = []
    for level in levels:
        kept = [t for t in windows.radii if t >= 2.0**-level]
        out.append(carleson_ratio(measure, q, WindowSet(centers=windows.centers, radii=kept)))
    return out
