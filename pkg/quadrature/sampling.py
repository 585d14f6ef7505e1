"""
Counter-based samplers for the ball and the sphere.

Sample i of stream s lives in block i // BLOCK_SIZE, and every block draws
from its own generator seeded by (seed, s, block). Any split of the index
range over workers therefore yields the same points.
"""

import math

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from errors import PreconditionError
from geometry.ball import automorphism_many, norm_sq
from utils.parallel import ordered_map

BLOCK_SIZE = 8192

STREAM_BALL = 1
STREAM_SPHERE = 2
STREAM_RULE_OFFSET = 3
STREAM_NET = 4
STREAM_PERTURB = 5
STREAM_VALUES = 6
STREAM_PACKING = 7


def block_rng(seed: int, stream: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, stream, *keys]))


def _check(n: int, count: int) -> None:
    if n < 1:
        raise PreconditionError(f"dimension must be >= 1, got {n}")
    if count < 1:
        raise PreconditionError(f"sample count must be >= 1, got {count}")


def _sphere_block(n: int, seed: int, stream: int, block: int) -> np.ndarray:
    g = block_rng(seed, stream, block).standard_normal((BLOCK_SIZE, 2 * n))
    z = g[:, :n] + 1j * g[:, n:]
    return z / np.sqrt(norm_sq(z))[:, None]


def _ball_block(n: int, seed: int, stream: int, block: int) -> np.ndarray:
    rng = block_rng(seed, stream, block)
    g = rng.standard_normal((BLOCK_SIZE, 2 * n))
    u = rng.random(BLOCK_SIZE)
    z = g[:, :n] + 1j * g[:, n:]
    radius = u ** (1.0 / (2 * n))
    return z * (radius / np.sqrt(norm_sq(z)))[:, None]


def _assemble(block_fn, n: int, count: int, seed: int, stream: int) -> np.ndarray:
    blocks = ordered_map(lambda b: block_fn(n, seed, stream, b), range(math.ceil(count / BLOCK_SIZE)))
    return np.concatenate(blocks)[:count]


def sample_sphere(n: int, count: int, seed: int, stream: int = STREAM_SPHERE) -> np.ndarray:
    """``count`` points uniform for dσ (normalised complex Gaussians)."""
    _check(n, count)
    return _assemble(_sphere_block, n, count, seed, stream)


def sample_ball(n: int, count: int, seed: int, stream: int = STREAM_BALL) -> np.ndarray:
    """``count`` points uniform for dm; radius by inverse CDF r = u^{1/(2n)}."""
    _check(n, count)
    return _assemble(_ball_block, n, count, seed, stream)


def sobol_ball(n: int, count: int, seed: int, replicate: int = 0) -> np.ndarray:
    """Scrambled Sobol points mapped to the ball through the same transform."""
    _check(n, count)
    sampler = qmc.Sobol(d=2 * n + 1, scramble=True, rng=block_rng(seed, STREAM_BALL, replicate))
    u = sampler.random_base2(max(0, math.ceil(math.log2(count))))[:count]
    g = ndtri(np.clip(u[:, : 2 * n], 1e-15, 1.0 - 1e-15))
    z = g[:, :n] + 1j * g[:, n:]
    radius = u[:, 2 * n] ** (1.0 / (2 * n))
    return z * (radius / np.sqrt(norm_sq(z)))[:, None]


def sobol_sphere(n: int, count: int, seed: int, replicate: int = 0) -> np.ndarray:
    _check(n, count)
    sampler = qmc.Sobol(d=2 * n, scramble=True, rng=block_rng(seed, STREAM_SPHERE, replicate))
    u = sampler.random_base2(max(0, math.ceil(math.log2(count))))[:count]
    g = ndtri(np.clip(u, 1e-15, 1.0 - 1e-15))
    z = g[:, :n] + 1j * g[:, n:]
    return z / np.sqrt(norm_sq(z))[:, None]


def pole_mixture(points: np.ndarray, pole: np.ndarray, *, on_sphere: bool = False):
    """
    Push every odd-indexed sample through φ_a and return the points with
    their density relative to dm (or dσ): ½ + ½ J_a, where
    J_a(z) = ((1−|a|²)/|1−⟨z,a⟩|²)^{n+1} (exponent n on the sphere).
    """
    points = points.copy()
    points[1::2] = automorphism_many(pole, points[1::2])
    n = points.shape[1]
    exponent = n if on_sphere else n + 1
    jac = ((1.0 - norm_sq(pole)) / np.abs(1.0 - np.sum(points * pole.conj(), axis=-1)) ** 2) ** exponent
    return points, 0.5 + 0.5 * jac


def unit_directions(n: int, count: int, seed: int) -> np.ndarray:
    """Equispaced circle points for n = 1, seeded sphere samples otherwise."""
    if n == 1:
        return np.exp(2j * np.pi * np.arange(count) / count)[:, None]
    return sample_sphere(n, count, seed, stream=STREAM_NET)


def graded_grid(
    n: int,
    levels: int,
    directions: int,
    seed: int = 0,
    extra: np.ndarray | None = None,
    per_octave: int = 1,
) -> np.ndarray:
    """
    Points on radii 1 − 2^{−j/per_octave}, j = 0 … levels·per_octave, times a
    set of directions. Directions of ``extra`` points are added to the
    direction set and the points themselves to the grid.
    """
    if levels < 0 or directions < 1:
        raise PreconditionError("graded grid needs levels >= 0 and directions >= 1")
    radii = 1.0 - 2.0 ** (-np.arange(levels * per_octave + 1) / per_octave)
    dirs = unit_directions(n, directions, seed)
    hot = np.zeros((0, n), dtype=complex)
    if extra is not None and np.size(extra):
        hot = np.asarray(extra, dtype=complex).reshape(-1, n)
        lengths = np.sqrt(norm_sq(hot))
        nonzero = lengths > 0
        dirs = np.concatenate([dirs, hot[nonzero] / lengths[nonzero][:, None]])
    grid = (radii[:, None, None] * dirs[None, :, :]).reshape(-1, n)
    return np.concatenate([grid, hot])
