"""
Sufficient conditions for interpolation, read off K values, and the choice
of extension exponent and solve method.
"""

import logging
import math
from typing import Optional, Tuple

from errors import NumericalError, PreconditionError
from seqlab.diagnostics import k_value
from seqlab.models import PointSeq
from solver.extension import check_solvable, make_extension, te_deviation
from solver.models import CriterionReport, ExtensionParams, SolveMethod
from spaces.models import SpaceParams

logger = logging.getLogger(__name__)

M_CANDIDATES = (1.0, 2.0, 4.0, 8.0)
FALLBACK_M = 2.0
ALPHA_CAP = 1e4
BISECTION_STEPS = 60


def l1_criterion(seq: PointSeq, params: SpaceParams, m: float) -> CriterionReport:
    """K(a, m, n+1+α) < 1."""
    if params.p != 1.0:
        raise PreconditionError(f"the l1 criterion needs p = 1, got p={params.p}")
    check_solvable(params)
    if not m > 0:
        raise PreconditionError(f"m must be positive, got {m}")
    k = k_value(seq, m, params.n + 1 + params.alpha).value
    return CriterionReport(name="l1", values={"k": k, "m": m}, satisfied=k < 1.0)


def lp_criterion(seq: PointSeq, params: SpaceParams) -> CriterionReport:
    """
    With q = p/(p−1) and β = αp/q:
    c₁ = K(a, (n+1)/p+α, (n+1)/q+β)^{1/q}, c₂ = K(a, (n+1)/q+β, (n+1)/p+α)^{1/p},
    satisfied when c₁c₂ < 1.
    """
    dual = params.conjugate()
    forward, backward = params.beta, dual.beta
    k1 = k_value(seq, forward, backward).value
    k2 = k_value(seq, backward, forward).value
    c1 = k1 ** (1.0 / dual.p)
    c2 = k2 ** (1.0 / params.p)
    return CriterionReport(
        name="lp",
        values={"k1": k1, "k2": k2, "c1": c1, "c2": c2, "c1c2": c1 * c2},
        satisfied=c1 * c2 < 1.0,
    )


def symmetric_lp_criterion(seq: PointSeq, params: SpaceParams, c0: Optional[float] = None) -> CriterionReport:
    """
    K(a, A, A) ≤ 2^{−(n+1+αp)|1−2/p|} c₀ with A = (n+1+αp) min(1/p, 1/q).

    Without ``c0`` the smallest admissible c₀ is reported and the test is
    whether it is below 1.
    """
    dual = params.conjugate()
    top = params.n + 1 + params.weight_exponent
    A = top * min(1.0 / params.p, 1.0 / dual.p)
    k = k_value(seq, A, A).value
    factor = 2.0 ** (-top * abs(1.0 - 2.0 / params.p))
    implied = k / factor
    if c0 is not None and not 0.0 < c0 < 1.0:
        raise PreconditionError(f"c0 must lie in (0, 1), got {c0}")
    satisfied = implied < 1.0 if c0 is None else k <= factor * c0
    values = {"k": k, "A": A, "factor": factor, "c0": implied if c0 is None else c0}
    return CriterionReport(name="symmetric-lp", values=values, satisfied=satisfied)


def separation_alpha(seq: PointSeq, target: float = 0.5) -> Tuple[float, float]:
    """
    Smallest α ≥ 0 (to bisection accuracy) with K(a, n+1+α, n+1+α) ≤ target,
    and m = n+1+α. K decreases in α, so the B_α^1 criterion then holds with
    that m.
    """
    if not 0.0 < target < 1.0:
        raise PreconditionError(f"target must lie in (0, 1), got {target}")

    def k_at(alpha: float) -> float:
        s = seq.n + 1 + alpha
        return k_value(seq, s, s).value

    if k_at(0.0) <= target:
        return 0.0, float(seq.n + 1)
    lo, hi = 0.0, 1.0
    while k_at(hi) > target:
        lo, hi = hi, 2.0 * hi
        if hi > ALPHA_CAP:
            raise NumericalError(f"no alpha below {ALPHA_CAP:g} brings K under {target}")
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if k_at(mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi, seq.n + 1 + hi


def choose_extension(seq: PointSeq, params: SpaceParams) -> Tuple[ExtensionParams, SolveMethod]:
    """
    p = 1: the smallest m in {1, 2, 4, 8} passing the l1 criterion, solved by
    Neumann; otherwise m = 2 solved directly. p > 1: Neumann when the TE
    deviation bound is below 1, else direct.
    """
    check_solvable(params)
    if params.p == 1.0:
        for m in M_CANDIDATES:
            if l1_criterion(seq, params, m).satisfied:
                logger.info("l1 criterion holds with m=%g", m)
                return make_extension(params, m), SolveMethod.NEUMANN
        logger.info("l1 criterion fails for m in %s; using direct solve", M_CANDIDATES)
        return make_extension(params, FALLBACK_M), SolveMethod.DIRECT
    ext = make_extension(params)
    deviation = te_deviation(seq, params, ext)
    if math.isfinite(deviation) and deviation < 1.0:
        return ext, SolveMethod.NEUMANN
    return ext, SolveMethod.DIRECT
