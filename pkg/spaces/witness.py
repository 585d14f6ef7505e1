"""
Test functions showing that inclusions fail: kernel sums over a maximal
family of disjoint Korányi balls on the sphere.
"""

import logging
import math

import numpy as np

from errors import PreconditionError
from quadrature.sampling import STREAM_PACKING, sample_sphere
from spaces.functions import KernelSumNode, kernel_sum

logger = logging.getLogger(__name__)

CIRCLE_CANDIDATES = 1 << 14
SPHERE_CANDIDATES_PER_BALL = 64
MAX_SPHERE_CANDIDATES = 1 << 17


def koranyi_packing(n: int, t: float, seed: int = 0) -> np.ndarray:
    """
    Greedy family of sphere points η_k with |1 − ⟨η_j, η_k⟩| ≥ 4t, so that the
    balls K(η_k, t) are pairwise disjoint (the square root of |1 − ⟨ζ, η⟩|
    satisfies the triangle inequality) and no further ball fits among the
    candidates.
    """
    if t <= 0:
        raise PreconditionError(f"Korányi radius must be positive, got {t}")
    if n == 1:
        candidates = np.exp(2j * np.pi * np.arange(CIRCLE_CANDIDATES) / CIRCLE_CANDIDATES)[:, None]
    else:
        expected = (1.0 / min(t, 1.0)) ** n
        count = int(min(MAX_SPHERE_CANDIDATES, max(1024, SPHERE_CANDIDATES_PER_BALL * expected)))
        candidates = sample_sphere(n, count, seed, stream=STREAM_PACKING)
    accepted = [candidates[0]]
    gaps = np.abs(1.0 - candidates @ candidates[0].conj())
    free = gaps >= 4.0 * t
    while np.any(free):
        k = int(np.argmax(free))
        accepted.append(candidates[k])
        free &= np.abs(1.0 - candidates @ candidates[k].conj()) >= 4.0 * t
    return np.asarray(accepted)


def witness_F(gamma: float, r: float, kappa: float, n: int, seed: int = 0) -> KernelSumNode:
    """
    F_{γ,r}(z) = Σ_k (1 − (1−r)⟨z, η_k⟩)^{−γ}, η_k packed for K(η_k, κr).
    """
    if gamma <= 0:
        raise PreconditionError(f"gamma must be positive, got {gamma}")
    if not 0.0 < r < 1.0:
        raise PreconditionError(f"r must lie in (0, 1), got {r}")
    if kappa <= 1.0:
        raise PreconditionError(f"kappa must exceed 1, got {kappa}")
    etas = koranyi_packing(n, kappa * r, seed)
    if len(etas) == 0:
        raise PreconditionError("Korányi packing produced no points")
    logger.info("Packed %d Korányi balls of radius %.4g", len(etas), kappa * r)
    return kernel_sum((1.0 - r) * etas, np.ones(len(etas)), gamma)


def expected_packing_size(n: int, t: float) -> float:
    """Order of magnitude t^{−n} of a maximal disjoint family."""
    return math.pow(t, -n)
