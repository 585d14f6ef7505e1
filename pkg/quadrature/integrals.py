"""
Integration over the ball and the sphere with respect to the normalised
measures dm and dσ, and over hyperbolic balls with respect to dτ.

Integrands are vectorised: they take an (m, n) complex point array and
return m values.
"""

import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import gammaln, hyp2f1, roots_jacobi, roots_legendre

from errors import DivergenceError, PreconditionError
from geometry.ball import as_point, automorphism_many, norm_sq, require_interior
from quadrature.models import ComplexEstimate, Estimate, QuadratureMethod, QuadratureSpec
from quadrature.sampling import (
    STREAM_RULE_OFFSET,
    block_rng,
    pole_mixture,
    sample_ball,
    sample_sphere,
    sobol_ball,
    sobol_sphere,
)
from utils.parallel import chunk_ranges, ordered_map

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

# fraction of non-finite integrand values tolerated before giving up
REJECTION_QUOTA = 1e-4
EVAL_CHUNK = 16384
QMC_REPLICATES = 4
PRODUCT_MAX_DIM = 3


def _evaluate(f: Integrand, points: np.ndarray) -> np.ndarray:
    parts = ordered_map(lambda r: np.asarray(f(points[r.start : r.stop])), chunk_ranges(len(points), EVAL_CHUNK))
    return np.concatenate(parts) if parts else np.zeros(0)


def _screen(values: np.ndarray) -> np.ndarray:
    """Boolean mask of usable values; raises when too many are non-finite."""
    finite = np.isfinite(values)
    bad = values.size - int(np.count_nonzero(finite))
    if bad > REJECTION_QUOTA * values.size:
        raise DivergenceError(f"{bad} of {values.size} integrand values are not finite")
    if bad:
        logger.warning("Dropping %d non-finite integrand values", bad)
    return finite


def _weight(points: np.ndarray, t: float) -> np.ndarray:
    if t == 0:
        return np.ones(len(points))
    return (1.0 - norm_sq(points)) ** t


# ---------- rules ----------
def _radial_rule(n: int, nodes: int, t: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes u_i = |z|² and weights with Σ w_i h(u_i) ≈ n ∫_0^1 h(u) (1−u)^t u^{n−1} du.
    """
    x, w = roots_jacobi(nodes, t, n - 1)
    return (1.0 + x) / 2.0, w * n / 2.0 ** (t + n)


def _sphere_rule(n: int, count: int, seed: int) -> Tuple[np.ndarray, np.ndarray, bool]:
    """Points and weights (summing to 1) on S; the flag tells whether they are random."""
    offsets = block_rng(seed, STREAM_RULE_OFFSET, 0).random(2)
    if n == 1:
        theta = 2 * np.pi * (np.arange(count) + offsets[0]) / count
        return np.exp(1j * theta)[:, None], np.full(count, 1.0 / count), False
    if n == 2:
        k_s = max(2, int(round(count ** (1.0 / 3.0))))
        k_t = max(2, int(math.sqrt(count / k_s)))
        x, w = roots_legendre(k_s)
        s, ws = (1.0 + x) / 2.0, w / 2.0
        t1 = 2 * np.pi * (np.arange(k_t) + offsets[0]) / k_t
        t2 = 2 * np.pi * (np.arange(k_t) + offsets[1]) / k_t
        S, T1, T2 = np.meshgrid(s, t1, t2, indexing="ij")
        W = np.broadcast_to(ws[:, None, None], S.shape) / (k_t * k_t)
        pts = np.stack([np.sqrt(S) * np.exp(1j * T1), np.sqrt(1.0 - S) * np.exp(1j * T2)], axis=-1)
        return pts.reshape(-1, 2), W.ravel(), False
    return sample_sphere(n, count, seed), np.full(count, 1.0 / count), True


def _ball_product_level(f, n, spec, t, radial_nodes, sphere_pts, sphere_w):
    u, w = _radial_rule(n, radial_nodes, t)
    pts = (np.sqrt(u)[:, None, None] * sphere_pts[None, :, :]).reshape(-1, n)
    values = _evaluate(f, pts)
    values = np.where(_screen(values), values, 0.0).reshape(len(u), len(sphere_w))
    # per sphere point radial integrals; their weighted mean is the estimate
    per_direction = w @ values
    return per_direction, len(pts)


def _ball_product(f, n, spec: QuadratureSpec, t: float):
    nodes = spec.radial_nodes
    sphere_pts, sphere_w, random_sphere = _sphere_rule(n, max(1, spec.samples // nodes), spec.seed)
    fine, used = _ball_product_level(f, n, spec, t, nodes, sphere_pts, sphere_w)
    coarse, used_coarse = _ball_product_level(f, n, spec, t, nodes // 2, sphere_pts, sphere_w)
    value = fine @ sphere_w
    stderr = abs(value - coarse @ sphere_w)
    if random_sphere and len(fine) > 1:
        stderr += float(np.std(fine) / math.sqrt(len(fine)))
    return value, stderr, used + used_coarse


def _mean_and_stderr(values: np.ndarray):
    mask = _screen(values)
    kept = values[mask]
    if kept.size == 0:
        raise DivergenceError("no finite integrand values")
    stderr = float(np.std(kept) / math.sqrt(kept.size)) if kept.size > 1 else 0.0
    return np.mean(kept), stderr, int(kept.size)


def _ball_monte_carlo(f, n, spec: QuadratureSpec, t: float):
    pts = sample_ball(n, spec.samples, spec.seed)
    density = 1.0
    pole = spec.pole_array()
    if pole is not None:
        pts, density = pole_mixture(pts, pole)
    return _mean_and_stderr(_evaluate(f, pts) * _weight(pts, t) / density)


def _replicated(f, spec: QuadratureSpec, t: float, draw, on_sphere: bool):
    count = max(1, spec.samples // QMC_REPLICATES)
    pole = spec.pole_array()
    means = []
    for rep in range(QMC_REPLICATES):
        pts = draw(count, rep)
        density = 1.0
        if pole is not None:
            pts, density = pole_mixture(pts, pole, on_sphere=on_sphere)
        weight = 1.0 if on_sphere else _weight(pts, t)
        means.append(_mean_and_stderr(_evaluate(f, pts) * weight / density)[0])
    means = np.asarray(means)
    return np.mean(means), float(np.std(means) / math.sqrt(QMC_REPLICATES)), count * QMC_REPLICATES


def _integrate_ball(f: Integrand, n: int, spec: QuadratureSpec, t: float):
    if n < 1:
        raise PreconditionError(f"dimension must be >= 1, got {n}")
    if t <= -1:
        raise PreconditionError(f"radial weight exponent must exceed -1, got {t}")
    if spec.method is QuadratureMethod.MONTE_CARLO or (
        spec.method is QuadratureMethod.PRODUCT and (n > PRODUCT_MAX_DIM or spec.pole is not None)
    ):
        return _ball_monte_carlo(f, n, spec, t)
    if spec.method is QuadratureMethod.QUASI_MONTE_CARLO:
        return _replicated(f, spec, t, lambda c, r: sobol_ball(n, c, spec.seed, r), on_sphere=False)
    return _ball_product(f, n, spec, t)


def _integrate_sphere(f: Integrand, n: int, spec: QuadratureSpec):
    if n < 1:
        raise PreconditionError(f"dimension must be >= 1, got {n}")
    pole = spec.pole_array()
    if spec.method is QuadratureMethod.QUASI_MONTE_CARLO:
        return _replicated(f, spec, 0.0, lambda c, r: sobol_sphere(n, c, spec.seed, r), on_sphere=True)
    if spec.method is QuadratureMethod.MONTE_CARLO or pole is not None or n > PRODUCT_MAX_DIM:
        pts = sample_sphere(n, spec.samples, spec.seed)
        density = 1.0
        if pole is not None:
            pts, density = pole_mixture(pts, pole, on_sphere=True)
        return _mean_and_stderr(_evaluate(f, pts) / density)

    pts, w, random_rule = _sphere_rule(n, spec.samples, spec.seed)
    values = _evaluate(f, pts)
    values = np.where(_screen(values), values, 0.0)
    value = values @ w
    if random_rule:
        return value, float(np.std(values) / math.sqrt(len(values))), len(values)
    coarse_pts, coarse_w, _ = _sphere_rule(n, max(1, spec.samples // 2), spec.seed)
    coarse = _evaluate(f, coarse_pts) @ coarse_w
    return value, abs(value - coarse), len(values) + len(coarse_w)


# ---------- public API ----------
def ball_integral(f: Integrand, n: int, spec: QuadratureSpec, weight_exponent: float = 0.0) -> Estimate:
    """
    Estimate of ∫_B f(z) (1−|z|²)^t dm(z), t = ``weight_exponent``.

    The product rule treats the weight exactly (Gauss-Jacobi in u = |z|²).
    """
    value, stderr, used = _integrate_ball(f, n, spec, weight_exponent)
    return Estimate(value=float(np.real(value)), stderr=float(stderr), samples_used=used)


def ball_integral_complex(f: Integrand, n: int, spec: QuadratureSpec, weight_exponent: float = 0.0) -> ComplexEstimate:
    value, stderr, used = _integrate_ball(f, n, spec, weight_exponent)
    return ComplexEstimate(value=complex(value), stderr=float(stderr), samples_used=used)


def sphere_integral(f: Integrand, n: int, spec: QuadratureSpec) -> Estimate:
    """Estimate of ∫_S f dσ."""
    value, stderr, used = _integrate_sphere(f, n, spec)
    return Estimate(value=float(np.real(value)), stderr=float(stderr), samples_used=used)


def tau_integral(f: Integrand, center, r: float, spec: QuadratureSpec) -> Estimate:
    """
    ∫_{E(z,r)} f dτ with dτ = (1−|w|²)^{−(n+1)} dm.

    E(z, r) is the image of {|y| < r} under φ_z, and τ is invariant, so this
    is r^{2n} ∫_B f(φ_z(r y)) (1 − r²|y|²)^{−(n+1)} dm(y).
    """
    if not 0.0 < r < 1.0:
        raise PreconditionError(f"hyperbolic radius must lie in (0, 1), got {r}")
    z = as_point(center)
    require_interior(z, "hyperbolic ball centre")
    n = z.size

    def pulled_back(y: np.ndarray) -> np.ndarray:
        w = r * y
        return np.asarray(f(automorphism_many(z, w))) * (1.0 - norm_sq(w)) ** (-(n + 1))

    inner = ball_integral(pulled_back, n, spec)
    scale = r ** (2 * n)
    return Estimate(value=scale * inner.value, stderr=scale * inner.stderr, samples_used=inner.samples_used)


def ball_weight_moment(n: int, t: float) -> float:
    """∫_B (1−|z|²)^t dm = Γ(n+1)Γ(t+1)/Γ(n+1+t)."""
    if t <= -1:
        return math.inf
    return math.exp(gammaln(n + 1) + gammaln(t + 1) - gammaln(n + 1 + t))


def kernel_ball_moment(n: int, t: float, c: float, radius: float) -> float:
    """Exact ∫_B (1−|z|²)^t / |1−⟨z,a⟩|^{n+1+c+t} dm for |a| = ``radius``."""
    s = (n + 1 + c + t) / 2.0
    return ball_weight_moment(n, t) * float(hyp2f1(s, s, n + 1 + t, radius * radius))


def kernel_sphere_moment(n: int, c: float, radius: float) -> float:
    """Exact ∫_S |1−⟨ζ,a⟩|^{−(n+c)} dσ for |a| = ``radius``."""
    s = (n + c) / 2.0
    return float(hyp2f1(s, s, n, radius * radius))


def pole_kernel_integrand(a: np.ndarray, exponent: float) -> Integrand:
    """z ↦ |1 − ⟨z, a⟩|^{−exponent}."""
    a = np.asarray(a, dtype=complex)
    return lambda pts: np.abs(1.0 - np.sum(pts * a.conj(), axis=-1)) ** (-exponent)


def default_spec(samples: Optional[int] = None, seed: Optional[int] = None, method: Optional[str] = None) -> QuadratureSpec:
    return QuadratureSpec.default(samples=samples, seed=seed, method=method)
