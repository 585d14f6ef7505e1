"""
Restriction, the interpolation solve, and dual (biorthogonal) families.
"""

import logging
import math
from typing import Any, List, Optional, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from errors import PreconditionError, SingularSystemError
from quadrature.models import QuadratureSpec
from seqlab.models import PointSeq
from solver.criteria import choose_extension
from solver.extension import (
    approx_extension,
    check_solvable,
    make_extension,
    node_weights,
    te_deviation,
    te_matrix,
    te_norm_estimate,
    weighted_norm,
)
from solver.models import DualFamily, ExtensionParams, SolveMethod, SolveReport
from spaces.functions import kernel_sum
from spaces.models import SpaceParams, ValueSeq
from spaces.norms import norm, sequence_norm

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e13
NEUMANN_MAX_ITER = 2000
NEUMANN_TOL = 1e-15
# contraction ratios are only read while the residual is far above rounding level
CONTRACTION_FLOOR = 1e-8


class FactorizedSystem:
    """LU factors of B for repeated solves on one sequence."""

    def __init__(self, seq: PointSeq, params: SpaceParams, ext: ExtensionParams):
        self.seq = seq
        self.params = params
        self.ext = ext
        self.matrix = te_matrix(seq, params, ext)
        if len(seq) == 0:
            self._lu = None
            return
        cond = np.linalg.cond(self.matrix, 1)
        if not math.isfinite(cond) or cond > MAX_CONDITION:
            raise SingularSystemError(f"interpolation matrix is numerically singular (cond={cond:.3g})")
        self._lu = lu_factor(self.matrix)

    def solve(self, values: np.ndarray) -> np.ndarray:
        if self._lu is None:
            return np.zeros(0, dtype=complex)
        return lu_solve(self._lu, values.astype(complex))

    def interpolant(self, coefficients: np.ndarray):
        return approx_extension(coefficients, self.seq, self.params, self.ext)


def restrict(f, seq: PointSeq, params: SpaceParams) -> ValueSeq:
    """{f(a_k)} with its ℓ^p_β norm."""
    values = f.evaluate(seq.points) if len(seq) else np.zeros(0, dtype=complex)
    return ValueSeq(
        values=tuple(complex(v) for v in values),
        params=params,
        norm=sequence_norm(values, seq.points, params),
    )


def residual_max(f, seq: PointSeq, values: np.ndarray, params: SpaceParams) -> float:
    """max_k |f(a_k) − v_k| (1−|a_k|²)^β."""
    if len(seq) == 0:
        return 0.0
    return float(np.max(np.abs(f.evaluate(seq.points) - values) * node_weights(seq) ** params.beta))


def neumann_solve(B: np.ndarray, v: np.ndarray, weights: np.ndarray, p: float, max_iter: int):
    """
    c^{(i+1)} = v + (I − B)c^{(i)} from c^{(0)} = v. The residual
    v − Bc^{(i)} = (I − B)^{i+1} v is carried as r ← r − Br, so the observed
    ratios are those of I − B itself. Returns (c, iterations, contraction).
    """
    c = v.copy()
    r = v - B @ v
    v_norm = weighted_norm(v, weights, p)
    r_norm = weighted_norm(r, weights, p)
    ratios = []
    iterations = 0
    while r_norm > NEUMANN_TOL * v_norm and iterations < max_iter:
        c = c + r
        r_next = r - B @ r
        r_next_norm = weighted_norm(r_next, weights, p)
        if r_norm > CONTRACTION_FLOOR * v_norm:
            ratios.append(r_next_norm / r_norm)
        iterations += 1
        r, r_norm = r_next, r_next_norm
    return c, iterations, (max(ratios) if ratios else 0.0)


def resolve_solver(
    seq: PointSeq,
    params: SpaceParams,
    ext: Optional[ExtensionParams] = None,
    method: Optional[SolveMethod] = None,
) -> Tuple[ExtensionParams, SolveMethod, float]:
    """
    Fill in whichever of ``ext`` and ``method`` is missing and return them
    with te_deviation. A missing ``ext`` comes from choose_extension; a
    missing ``method`` is Neumann exactly when te_deviation < 1 for the
    extension in use. An explicit Neumann request with te_deviation ≥ 1 is
    refused.
    """
    if ext is None:
        ext, chosen = choose_extension(seq, params)
        method = method or chosen
    deviation = te_deviation(seq, params, ext)
    if method is None:
        method = SolveMethod.NEUMANN if deviation < 1.0 else SolveMethod.DIRECT
    method = SolveMethod(method)
    if method is SolveMethod.NEUMANN and not deviation < 1.0:
        logger.warning("Refusing Neumann solve: te_deviation %.4g >= 1", deviation)
        raise PreconditionError(
            f"te_deviation = {deviation:.6g} >= 1: the Neumann series need not converge; "
            "use a larger m, split the sequence, or the direct method"
        )
    return ext, method, deviation


def interpolate(
    seq: PointSeq,
    values: Any,
    params: SpaceParams,
    ext: Optional[ExtensionParams] = None,
    method: Optional[SolveMethod] = None,
    spec: Optional[QuadratureSpec] = None,
    compute_norm: bool = True,
    max_iter: int = NEUMANN_MAX_ITER,
) -> SolveReport:
    """
    Coefficients c with B c = v, by LU or by the Neumann series of TE, and
    the interpolant E(c).

    Missing ``ext`` or ``method`` are filled in by resolve_solver.
    """
    check_solvable(params)
    v = np.asarray(values.values if isinstance(values, ValueSeq) else values, dtype=complex).ravel()
    if v.size != len(seq):
        raise PreconditionError(f"{v.size} values for {len(seq)} points")
    ext, method, deviation = resolve_solver(seq, params, ext, method)
    weights = node_weights(seq) ** params.beta
    notes: List[str] = []
    contraction = None

    if method is SolveMethod.NEUMANN:
        B = te_matrix(seq, params, ext)
        coefficients, iterations, contraction = neumann_solve(B, v, weights, params.p, max_iter)
        if iterations >= max_iter:
            notes.append(f"Neumann iteration stopped at max_iter={max_iter}")
            logger.warning("Neumann iteration hit max_iter=%d", max_iter)
    else:
        coefficients = FactorizedSystem(seq, params, ext).solve(v)
        iterations = 0

    f = approx_extension(coefficients, seq, params, ext)
    estimate = norm(f, params, spec or QuadratureSpec.default()) if compute_norm else None
    return SolveReport(
        interpolant=f,
        coefficients=tuple(complex(c) for c in coefficients),
        residual_max=residual_max(f, seq, v, params),
        te_deviation=deviation,
        te_norm_estimate=te_norm_estimate(seq, params, ext) if params.p > 1 else deviation,
        iterations=iterations,
        contraction=contraction,
        norm_estimate=estimate,
        value_norm=weighted_norm(v, weights, params.p),
        method=method,
        extension=ext,
        notes=notes,
    )


def dual_family(
    seq: PointSeq,
    params: SpaceParams,
    ext: Optional[ExtensionParams] = None,
    spec: Optional[QuadratureSpec] = None,
    compute_norms: bool = False,
) -> DualFamily:
    """
    f_j with f_j(a_k) = 0 for k ≠ j and f_j(a_j) = (1−|a_j|²)^{−β}, all from
    one factorisation of B.
    """
    check_solvable(params)
    ext = ext or make_extension(params)
    system = FactorizedSystem(seq, params, ext)
    targets = np.diag(node_weights(seq) ** (-params.beta)).astype(complex)
    coefficients = system.solve(targets) if len(seq) else np.zeros((0, 0), dtype=complex)
    scale = node_weights(seq) ** ext.s
    functions = [kernel_sum(seq.points, coefficients[:, j] * scale, ext.s) for j in range(len(seq))]
    family = DualFamily(functions=functions)
    if compute_norms:
        return dual_constant(family, params, spec or QuadratureSpec.default())
    return family


def dual_constant(family: DualFamily, params: SpaceParams, spec: QuadratureSpec) -> DualFamily:
    """Attach ‖f_j‖ and the uniform bound M = max_j ‖f_j‖."""
    norms = [norm(f, params, spec).value for f in family.functions]
    return DualFamily(functions=family.functions, norms=norms, constant=max(norms) if norms else 0.0)
