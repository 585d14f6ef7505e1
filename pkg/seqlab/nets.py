"""
Sequence generators: separated nets, the truncated geometric disk net,
perturbations, unions and automorphic images.
"""

import logging
import math
from typing import List

import numpy as np

from errors import PreconditionError
from geometry.ball import automorphism_many, norm_sq, pairwise_distances
from geometry.models import Automorphism
from quadrature.sampling import STREAM_NET, STREAM_PERTURB, block_rng, graded_grid
from seqlab.models import PointSeq

logger = logging.getLogger(__name__)

CANDIDATE_BLOCK = 256
REJECTION_FACTOR = 200
MAX_PERTURB_ATTEMPTS = 64


def _layer_candidates(n: int, radius: float, seed: int, layer: int, block: int) -> np.ndarray:
    g = block_rng(seed, STREAM_NET, layer, block).standard_normal((CANDIDATE_BLOCK, 2 * n))
    z = g[:, :n] + 1j * g[:, n:]
    return radius * z / np.sqrt(norm_sq(z))[:, None]


def generate_net(n: int, r: float, m_max: int, seed: int = 0) -> PointSeq:
    """
    Greedy separated net: layer m (1 ≤ m ≤ m_max) lives on the sphere of
    radius 1 − r^m. A uniformly drawn candidate is kept when its distance to
    every kept point, in any layer, is at least r; a layer closes after
    200·max(1, L_m) consecutive rejections.
    """
    if n < 1:
        raise PreconditionError(f"dimension must be >= 1, got {n}")
    if not 0.0 < r < 1.0:
        raise PreconditionError(f"r must lie in (0, 1), got {r}")
    if m_max < 1:
        raise PreconditionError(f"m_max must be >= 1, got {m_max}")

    kept = np.zeros((0, n), dtype=complex)
    layer_counts: List[int] = []
    for m in range(1, m_max + 1):
        radius = 1.0 - r**m
        if radius >= 1.0 - 1e-14:
            raise PreconditionError(f"layer {m} radius 1 - r^m is numerically on the boundary")
        count = rejections = block = 0
        closed = False
        while not closed:
            for candidate in _layer_candidates(n, radius, seed, m, block):
                if len(kept) == 0 or pairwise_distances(candidate[None, :], kept)[0].min() >= r:
                    kept = np.vstack([kept, candidate])
                    count += 1
                    rejections = 0
                else:
                    rejections += 1
                if rejections >= REJECTION_FACTOR * max(1, count):
                    closed = True
                    break
            block += 1
        layer_counts.append(count)
        logger.debug("Net layer %d: %d points on radius %.6g", m, count, radius)

    logger.info("Generated net with %d points (layers %s)", len(kept), layer_counts)
    return PointSeq(
        n=n,
        points=kept,
        meta={"method": "net", "r": r, "m_max": m_max, "seed": seed, "layer_counts": layer_counts},
    )


def geometric_disk_net(levels: int, base: int = 1) -> PointSeq:
    """Circles of radius 1 − 2^{−m}, m = 1 … levels, each with base·2^m equispaced points."""
    if levels < 1 or base < 1:
        raise PreconditionError("geometric net needs levels >= 1 and base >= 1")
    layers = []
    for m in range(1, levels + 1):
        count = base * 2**m
        # odd layers are turned half a step so rays do not line up
        shift = 0.5 * (m % 2)
        layers.append((1.0 - 2.0**-m) * np.exp(2j * np.pi * (np.arange(count) + shift) / count))
    return PointSeq(
        n=1,
        points=np.concatenate(layers)[:, None],
        meta={"method": "geometric-disk-net", "levels": levels, "base": base},
    )


def _tau_uniform_offsets(n: int, delta: float, rng: np.random.Generator, count: int) -> np.ndarray:
    """Points uniform for dτ in {|w| < δ}."""
    u = rng.random(count)
    x = u ** (1.0 / n) * delta * delta / (1.0 - delta * delta)
    rho = np.sqrt(x / (1.0 + x))
    g = rng.standard_normal((count, 2 * n))
    z = g[:, :n] + 1j * g[:, n:]
    return z * (rho / np.sqrt(norm_sq(z)))[:, None]


def perturb(seq: PointSeq, delta: float, seed: int = 0) -> PointSeq:
    """Move every a_k to a point a'_k drawn uniformly (for dτ) from E(a_k, δ)."""
    if not 0.0 < delta < 1.0:
        raise PreconditionError(f"delta must lie in (0, 1), got {delta}")
    moved = np.empty_like(seq.points)
    for k, a in enumerate(seq.points):
        for attempt in range(MAX_PERTURB_ATTEMPTS):
            w = _tau_uniform_offsets(seq.n, delta, block_rng(seed, STREAM_PERTURB, k, attempt), 1)
            candidate = automorphism_many(a, w)[0]
            if pairwise_distances(a[None, :], candidate[None, :])[0, 0] < delta:
                moved[k] = candidate
                break
        else:
            raise PreconditionError(f"could not place a perturbed point within {delta} of point {k}")
    return PointSeq(n=seq.n, points=moved, meta={**seq.meta, "perturbed": {"delta": delta, "seed": seed}})


def union(seq: PointSeq, other: PointSeq) -> PointSeq:
    if seq.n != other.n:
        raise PreconditionError(f"dimensions differ: {seq.n} vs {other.n}")
    return PointSeq(
        n=seq.n,
        points=np.concatenate([seq.points, other.points]),
        meta={"method": "union", "parts": [seq.meta, other.meta]},
    )


def apply_automorphism_to_seq(seq: PointSeq, phi: Automorphism) -> PointSeq:
    if phi.dimension != seq.n:
        raise PreconditionError(f"automorphism acts on C^{phi.dimension}, sequence lives in C^{seq.n}")
    points = phi(seq.points) if len(seq) else seq.points.copy()
    return PointSeq(n=seq.n, points=points, meta={**seq.meta, "automorphism": phi.model_dump(mode="json")})


def probe_grid(n: int, levels: int = 12, count: int = 64, seed: int = 0, extra=None) -> np.ndarray:
    """Radial-angular grid on radii 1 − 2^{−j} (origin included) plus ``extra`` points."""
    return graded_grid(n, levels, count, seed, extra)


def layer_slope(layer_counts: List[int], first: int = 1) -> float:
    """Least-squares slope of log L_m against m, from layer ``first`` on (1-based)."""
    counts = np.asarray(layer_counts[first - 1 :], dtype=float)
    if len(counts) < 2 or np.any(counts <= 0):
        return math.nan
    m = np.arange(first, first + len(counts))
    return float(np.polyfit(m, np.log(counts), 1)[0])
