"""
Norms in B_α^p, H^p and the growth spaces, plus the pointwise and Lipschitz
probes that go with them.
"""

import logging
import math
from typing import Any, Optional

import numpy as np

from errors import DivergenceError, PreconditionError
from geometry.ball import as_points, norm_sq, paired_distances
from quadrature.integrals import ball_integral, sphere_integral
from quadrature.models import QuadratureSpec
from quadrature.sampling import graded_grid
from spaces.models import HardyProfile, NormEstimate, SpaceKind, SpaceParams

logger = logging.getLogger(__name__)

GROWTH_LEVELS = 24
GROWTH_PER_OCTAVE = 8
GROWTH_DIRECTIONS = 256
HARDY_LEVELS = 12
# relative change between grid levels still counted as stable
STABILITY_RTOL = 1e-2


def _diverged(kind: SpaceKind, reason: str) -> NormEstimate:
    logger.warning("Norm diverged: %s", reason)
    return NormEstimate(value=math.inf, stderr=math.inf, kind=kind, diagnostic=reason)


def _bergman_norm(f, params: SpaceParams, spec: QuadratureSpec) -> NormEstimate:
    p = params.p
    try:
        est = ball_integral(lambda pts: np.abs(f.evaluate(pts)) ** p, params.n, spec, params.weight_exponent)
    except DivergenceError as e:
        return _diverged(SpaceKind.BERGMAN, str(e))
    if not math.isfinite(est.value):
        return _diverged(SpaceKind.BERGMAN, "integral overflowed")
    if est.value <= 0.0:
        return NormEstimate(
            value=0.0, stderr=est.stderr ** (1.0 / p), samples_used=est.samples_used, kind=SpaceKind.BERGMAN
        )
    value = est.value ** (1.0 / p)
    # delta method for the p-th root
    stderr = est.stderr * value / (p * est.value)
    return NormEstimate(value=value, stderr=stderr, samples_used=est.samples_used, kind=SpaceKind.BERGMAN)


def _growth_sup(f, params: SpaceParams, levels: int, directions: int, seed: int) -> tuple[float, int]:
    hot = f.hot_points()
    grid = graded_grid(params.n, levels, directions, seed, hot if hot.size else None, GROWTH_PER_OCTAVE)
    weights = (1.0 - norm_sq(grid)) ** params.alpha
    return float(np.max(weights * np.abs(f.evaluate(grid)))), len(grid)


def _growth_norm(f, params: SpaceParams, spec: QuadratureSpec) -> NormEstimate:
    fine, used = _growth_sup(f, params, GROWTH_LEVELS, GROWTH_DIRECTIONS, spec.seed)
    coarse, _ = _growth_sup(f, params, GROWTH_LEVELS - 4, GROWTH_DIRECTIONS // 2, spec.seed)
    if not math.isfinite(fine):
        return _diverged(SpaceKind.GROWTH, "weighted supremum is not finite")
    stable = abs(fine - coarse) <= STABILITY_RTOL * max(fine, 1e-300)
    if not stable:
        logger.warning("Growth norm not stable under grid refinement (%.6g vs %.6g)", fine, coarse)
    return NormEstimate(
        value=fine,
        stderr=abs(fine - coarse),
        samples_used=used,
        kind=SpaceKind.GROWTH,
        lower_bound=True,
        refinement_stable=stable,
    )


def hardy_profile(f, n: int, p: float, radii: Any, spec: QuadratureSpec) -> HardyProfile:
    """Integral means M_p(f, r) = ∫_S |f(rζ)|^p dσ on increasing radii."""
    radii = [float(r) for r in radii]
    if any(not 0.0 <= r < 1.0 for r in radii) or radii != sorted(radii):
        raise PreconditionError("Hardy radii must increase inside [0, 1)")
    values = [sphere_integral(lambda zeta, r=r: np.abs(f.evaluate(r * zeta)) ** p, n, spec).value for r in radii]
    monotone = all(b >= a * (1.0 - 1e-9) - 1e-12 for a, b in zip(values, values[1:]))
    return HardyProfile(radii=radii, values=values, monotone=monotone)


def _hardy_norm(f, params: SpaceParams, spec: QuadratureSpec) -> NormEstimate:
    radii = [1.0 - 2.0 ** (-j) for j in range(1, HARDY_LEVELS + 1)]
    profile = hardy_profile(f, params.n, params.p, [0.0] + radii, spec)
    if not profile.monotone:
        logger.warning("Integral means are not monotone on the radius grid")
    top = max(profile.values)
    if not math.isfinite(top):
        return _diverged(SpaceKind.HARDY, "integral means are not finite")
    value = top ** (1.0 / params.p)
    last = profile.values[-1]
    stderr = abs(value - profile.values[-2] ** (1.0 / params.p)) if last > 0 else 0.0
    return NormEstimate(
        value=value,
        stderr=stderr,
        samples_used=spec.samples * len(profile.radii),
        kind=SpaceKind.HARDY,
        lower_bound=True,
        refinement_stable=profile.monotone,
    )


def norm(f, params: SpaceParams, spec: QuadratureSpec) -> NormEstimate:
    """‖f‖ in the space selected by ``params``."""
    kind = params.kind
    if kind is SpaceKind.GROWTH:
        return _growth_norm(f, params, spec)
    if kind is SpaceKind.HARDY:
        return _hardy_norm(f, params, spec)
    return _bergman_norm(f, params, spec)


def sequence_norm(values: Any, points: Any, params: SpaceParams) -> float:
    """‖v‖ in ℓ^p_β: (Σ_k [(1−|a_k|²)^β |v_k|]^p)^{1/p}, the sup for p = ∞."""
    v = np.asarray(values, dtype=complex).ravel()
    if v.size == 0:
        return 0.0
    pts = as_points(points, params.n)
    if len(pts) != v.size:
        raise PreconditionError(f"{v.size} values for {len(pts)} points")
    weighted = (1.0 - norm_sq(pts)) ** params.beta * np.abs(v)
    if math.isinf(params.p):
        return float(np.max(weighted))
    return float(np.sum(weighted ** params.p) ** (1.0 / params.p))


def pointwise_bound_probe(f, params: SpaceParams, grid: Any, norm_value: Optional[float] = None,
                          spec: Optional[QuadratureSpec] = None) -> float:
    """max over the grid of |f(z)| (1−|z|²)^β / ‖f‖."""
    if norm_value is None:
        norm_value = norm(f, params, spec or QuadratureSpec.default()).value
    if not math.isfinite(norm_value) or norm_value <= 0:
        raise PreconditionError(f"pointwise probe needs a finite positive norm, got {norm_value}")
    pts = as_points(grid, params.n)
    weighted = np.abs(f.evaluate(pts)) * (1.0 - norm_sq(pts)) ** params.beta
    return float(np.max(weighted) / norm_value)


def lipschitz_probe(f, params: SpaceParams, pairs: Any, norm_value: float) -> float:
    """
    max over pairs (a, b) with 0 < d(a,b) < 1/2 of
    |f(a) − f(b)| (1−|a|²)^β / (‖f‖ d(a, b)).
    """
    pairs = np.asarray(pairs, dtype=complex)
    if pairs.ndim != 3 or pairs.shape[1] != 2:
        raise PreconditionError(f"expected (k, 2, n) pairs, got shape {pairs.shape}")
    a, b = pairs[:, 0], pairs[:, 1]
    d = paired_distances(a, b)
    keep = (d > 0) & (d < 0.5)
    if not np.any(keep):
        return 0.0
    a, b, d = a[keep], b[keep], d[keep]
    diff = np.abs(f.evaluate(a) - f.evaluate(b))
    return float(np.max(diff * (1.0 - norm_sq(a)) ** params.beta / (norm_value * d)))
