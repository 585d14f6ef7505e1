"""
Density of disk sequences, the interpolation verdict it implies, and the
function vanishing on a sequence but not at the origin.
"""

import logging
from typing import Any, List, Optional, Sequence

import numpy as np

from errors import PreconditionError
from geometry.ball import as_points, norm_sq, pairwise_distances, require_interior
from quadrature.models import QuadratureSpec
from seqlab.models import PointSeq
from seqlab.nets import probe_grid
from solver.interpolate import interpolate
from solver.models import ExtensionParams, SolveMethod
from solver.stability import interpolation_constant_probe
from spaces.functions import add, affine, constant, multiply, scale
from spaces.models import SpaceParams
from spaces.norms import norm, sequence_norm
from utils.parallel import chunk_ranges, ordered_map
from utils.report_saver import render_csv

from .models import DensityReport, VanishingReport, Verdict

logger = logging.getLogger(__name__)

DEFAULT_R_EXPONENTS = range(2, 15)
TAIL = 3
VERDICT_BAND = 0.05
GRID_CHUNK = 256
ORIGIN_FLOOR = 1e-6


def _require_disk(seq: PointSeq) -> None:
    if seq.n != 1:
        raise PreconditionError(f"density needs a sequence in the unit disk (n = 1), got n={seq.n}")


def default_radii() -> List[float]:
    return [1.0 - 2.0**-j for j in DEFAULT_R_EXPONENTS]


def default_z_grid(seq: PointSeq) -> np.ndarray:
    return probe_grid(1, extra=seq.points)


def annular_sums(points: np.ndarray, z: np.ndarray, radii: Sequence[float]) -> np.ndarray:
    """(len(z), len(radii)) array of Σ_{1/2<|φ_z(a_k)|<r} log(1/|φ_z(a_k)|)."""
    d = pairwise_distances(z, points)
    out = np.empty((len(z), len(radii)))
    logs = -np.log(np.where(d > 0.5, d, 1.0))
    for i, r in enumerate(radii):
        out[:, i] = np.where((d > 0.5) & (d < r), logs, 0.0).sum(axis=1)
    return out


def seip_density(
    seq: PointSeq,
    r_list: Optional[Sequence[float]] = None,
    z_grid: Optional[Any] = None,
) -> DensityReport:
    """
    Profile of sup_z Σ log(1/|φ_z(a_k)|) / log(1/(1−r)) over ``r_list``; the
    density is the max over the last three radii.
    """
    _require_disk(seq)
    radii = list(default_radii() if r_list is None else r_list)
    if not radii:
        raise PreconditionError("r_list must not be empty")
    if any(not 0.0 < r < 1.0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise PreconditionError("r_list must increase strictly inside (0, 1)")
    grid = default_z_grid(seq) if z_grid is None else as_points(z_grid, 1)
    require_interior(grid, "grid point")

    if len(seq) == 0:
        sups, where = np.zeros(len(radii)), np.zeros(len(radii), dtype=int)
    else:
        def chunk_best(rows: range):
            sums = annular_sums(seq.points, grid[rows.start : rows.stop], radii)
            idx = np.argmax(sums, axis=0)
            return sums[idx, np.arange(len(radii))], idx + rows.start

        parts = ordered_map(chunk_best, chunk_ranges(len(grid), GRID_CHUNK))
        values = np.stack([p[0] for p in parts])
        owners = np.stack([p[1] for p in parts])
        best_chunk = np.argmax(values, axis=0)
        sups = values[best_chunk, np.arange(len(radii))]
        where = owners[best_chunk, np.arange(len(radii))]

    denominators = np.log(1.0 / (1.0 - np.asarray(radii)))
    profile = sups / denominators
    tail = slice(max(0, len(radii) - TAIL), len(radii))
    pick = tail.start + int(np.argmax(profile[tail]))
    density = float(profile[pick])

    slope = None
    if len(radii) >= 2:
        levels = np.log2(1.0 / (1.0 - np.asarray(radii)[tail]))
        if len(levels) >= 2:
            slope = float(np.polyfit(levels, profile[tail], 1)[0])

    notes = []
    if slope is not None and slope < 0:
        notes.append("profile decreases over the last radii: a finite truncation tends to density 0 as r -> 1")
        logger.warning("Density profile still decreasing (slope %.3g); estimate is a truncation proxy", slope)
    return DensityReport(
        density=density,
        r_profile=[(float(r), float(v)) for r, v in zip(radii, profile)],
        z_argmax=complex(grid[where[pick], 0]) if len(seq) else None,
        trend_slope=slope,
        notes=notes,
    )


def verdict_from_density(density: float, threshold: float, band: float = VERDICT_BAND) -> Verdict:
    """Within ±band of the threshold is inconclusive."""
    if density < threshold - band:
        return Verdict.INTERPOLATING
    if density > threshold + band:
        return Verdict.NOT_INTERPOLATING
    return Verdict.INCONCLUSIVE


def density_verdict(
    seq: PointSeq,
    p: float,
    alpha: float,
    r_list: Optional[Sequence[float]] = None,
    z_grid: Optional[Any] = None,
    band: float = VERDICT_BAND,
) -> Verdict:
    """Compare the density estimate with α + 1/p."""
    params = SpaceParams(n=1, p=p, alpha=alpha)
    report = seip_density(seq, r_list, z_grid)
    return verdict_from_density(report.density, params.smoothness, band)


def _check_origin_gap(seq: PointSeq, delta0: Optional[float]) -> None:
    if len(seq) == 0:
        return
    smallest = float(np.sqrt(norm_sq(seq.points)).min())
    floor = ORIGIN_FLOOR if delta0 is None else delta0
    if smallest < floor:
        raise PreconditionError(f"all |a_k| must be at least {floor:g}; smallest is {smallest:.3g}")


def vanishing_at_origin(
    seq: PointSeq,
    params: SpaceParams,
    delta0: Optional[float] = None,
    ext: Optional[ExtensionParams] = None,
    method: Optional[SolveMethod] = None,
):
    """f(z) = 1 − z·f₀(z) with f₀(a_k) = 1/a_k for every k; f(a_k) = 0, f(0) = 1."""
    _require_disk(seq)
    _check_origin_gap(seq, delta0)
    if len(seq) == 0:
        return constant(1.0)
    targets = 1.0 / seq.points[:, 0]
    f0 = interpolate(seq, targets, params, ext=ext, method=method, compute_norm=False).interpolant
    return add(constant(1.0), scale(-1.0, multiply(affine(0.0, [1.0]), f0)))


def vanishing_report(
    seq: PointSeq,
    params: SpaceParams,
    delta0: Optional[float] = None,
    spec: Optional[QuadratureSpec] = None,
    trials: int = 5,
    seed: int = 0,
) -> VanishingReport:
    """Node residuals and norm of the vanishing function, against 1 + M̂·‖{1/a_k}‖."""
    spec = spec or QuadratureSpec.default()
    f = vanishing_at_origin(seq, params, delta0)
    residual = float(np.max(np.abs(f.evaluate(seq.points)))) if len(seq) else 0.0
    reciprocal = sequence_norm(1.0 / seq.points[:, 0], seq.points, params) if len(seq) else 0.0
    estimate = norm(f, params, spec)
    constant_estimate = interpolation_constant_probe(seq, params, trials=trials, seed=seed, spec=spec) if len(seq) else 0.0
    return VanishingReport(
        node_residual=residual,
        value_at_origin=f.evaluate(np.zeros((1, 1), dtype=complex))[0],
        norm_estimate=estimate,
        reciprocal_norm=reciprocal,
        constant_estimate=constant_estimate,
        bound=1.0 + constant_estimate * reciprocal,
    )


def profile_csv(report: DensityReport) -> str:
    """``r,sup_value`` rows with repr floats."""
    return render_csv(["r", "sup_value"], report.r_profile)
