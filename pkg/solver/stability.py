"""
Perturbation stability of interpolation and an empirical interpolation
constant.
"""

import logging
import math
from typing import Any, List, Optional

import numpy as np

from errors import PreconditionError
from quadrature.models import QuadratureSpec
from quadrature.sampling import STREAM_VALUES, block_rng
from seqlab.models import PointSeq
from solver.extension import approx_extension, check_solvable, make_extension, node_weights, te_matrix, weighted_norm
from solver.interpolate import NEUMANN_MAX_ITER, FactorizedSystem, neumann_solve, residual_max, resolve_solver
from solver.models import ExtensionParams, SolveMethod, SolveReport
from spaces.models import SpaceParams, ValueSeq
from spaces.norms import norm

logger = logging.getLogger(__name__)

STABILITY_MAX_ITER = 100
STABILITY_TOL = 1e-12


def stability_iterate(
    seq: PointSeq,
    perturbed: PointSeq,
    values: Any,
    params: SpaceParams,
    ext: Optional[ExtensionParams] = None,
    method: Optional[SolveMethod] = None,
    max_iter: int = STABILITY_MAX_ITER,
    tol: float = STABILITY_TOL,
    spec: Optional[QuadratureSpec] = None,
    compute_norm: bool = False,
) -> SolveReport:
    """
    Interpolate on ``perturbed`` with the solver of ``seq``: f_j interpolates
    v^j on seq, v^{j+1} = v^j − f_j|perturbed, and Σ_j f_j takes the values
    v⁰ on ``perturbed`` once ‖v^j‖ < tol·‖v⁰‖.

    ``contraction`` reports γ = max_j ‖v^{j+1}‖/‖v^j‖; γ ≥ 1 stops the
    iteration and is noted rather than raised. ``ext`` and ``method`` are
    resolved on ``seq`` as in interpolate; every inner solve uses that method.
    """
    check_solvable(params)
    if perturbed.n != seq.n or len(perturbed) != len(seq):
        raise PreconditionError("perturbed sequence must match the original in length and dimension")
    ext, method, deviation = resolve_solver(seq, params, ext, method)
    v0 = np.asarray(values.values if isinstance(values, ValueSeq) else values, dtype=complex).ravel()
    if v0.size != len(seq):
        raise PreconditionError(f"{v0.size} values for {len(seq)} points")

    if method is SolveMethod.NEUMANN:
        B = te_matrix(seq, params, ext)
        seq_weights = node_weights(seq) ** params.beta

        def solve(target: np.ndarray) -> np.ndarray:
            return neumann_solve(B, target, seq_weights, params.p, NEUMANN_MAX_ITER)[0]

    else:
        solve = FactorizedSystem(seq, params, ext).solve
    weights = node_weights(perturbed) ** params.beta
    total = np.zeros(len(seq), dtype=complex)
    v = v0.copy()
    history: List[float] = [weighted_norm(v, weights, params.p)]
    start = history[0]
    gamma = 0.0
    notes: List[str] = []
    iterations = 0
    while history[-1] > tol * start and iterations < max_iter:
        coefficients = solve(v)
        f = approx_extension(coefficients, seq, params, ext)
        v_next = v - f.evaluate(perturbed.points)
        size = weighted_norm(v_next, weights, params.p)
        ratio = size / history[-1]
        iterations += 1
        if ratio >= 1.0:
            notes.append(f"contraction {ratio:.4g} >= 1 at iteration {iterations}: perturbation too large")
            logger.warning("Stability iteration expands (ratio %.4g); stopping", ratio)
            gamma = max(gamma, ratio)
            break
        total += coefficients
        v = v_next
        history.append(size)
        # ratios taken at rounding level say nothing about γ
        if history[-2] > 1e-10 * start:
            gamma = max(gamma, ratio)
    if iterations >= max_iter and history[-1] > tol * start:
        notes.append(f"stopped at max_iter={max_iter}")

    F = approx_extension(total, seq, params, ext)
    estimate = norm(F, params, spec or QuadratureSpec.default()) if compute_norm else None
    return SolveReport(
        interpolant=F,
        coefficients=tuple(complex(c) for c in total),
        residual_max=residual_max(F, perturbed, v0, params),
        te_deviation=deviation,
        iterations=iterations,
        contraction=gamma,
        norm_estimate=estimate,
        value_norm=start,
        method=method,
        extension=ext,
        notes=notes + [f"value norms: {', '.join(f'{h:.3e}' for h in history)}"],
    )


def random_values(seq: PointSeq, params: SpaceParams, seed: int, trial: int) -> np.ndarray:
    """Complex Gaussian targets scaled to unit ℓ^p_β norm."""
    g = block_rng(seed, STREAM_VALUES, trial).standard_normal((len(seq), 2))
    v = (g[:, 0] + 1j * g[:, 1]) * node_weights(seq) ** (-params.beta)
    return v / weighted_norm(v, node_weights(seq) ** params.beta, params.p)


def interpolation_constant_probe(
    seq: PointSeq,
    params: SpaceParams,
    ext: Optional[ExtensionParams] = None,
    trials: int = 5,
    seed: int = 0,
    spec: Optional[QuadratureSpec] = None,
) -> float:
    """M̂ = max over random unit-norm targets v of ‖E(B⁻¹v)‖ / ‖v‖."""
    check_solvable(params)
    if trials < 1:
        raise PreconditionError(f"trials must be >= 1, got {trials}")
    if len(seq) == 0:
        return 0.0
    ext = ext or make_extension(params)
    spec = spec or QuadratureSpec.default()
    system = FactorizedSystem(seq, params, ext)
    best = 0.0
    for trial in range(trials):
        v = random_values(seq, params, seed, trial)
        estimate = norm(system.interpolant(system.solve(v)), params, spec)
        if not math.isfinite(estimate.value):
            logger.warning("Interpolant norm diverged on trial %d", trial)
            return math.inf
        best = max(best, estimate.value)
    return best
