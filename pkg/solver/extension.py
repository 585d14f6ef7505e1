"""
The approximate extension E and the matrix B of TE on finite sequences.

For targets v the interpolant is Σ_k c_k ((1−|a_k|²)/(1−⟨z,a_k⟩))^s, and its
values at the nodes are B c with B_jk = ((1−|a_k|²)/(1−⟨a_j,a_k⟩))^s.
"""

import logging
import math
from typing import Any

import numpy as np

from errors import PreconditionError
from geometry.ball import norm_sq
from seqlab.diagnostics import k_rows
from seqlab.models import PointSeq
from solver.models import ExtensionParams
from spaces.functions import KernelSumNode, kernel_sum
from spaces.models import SpaceKind, SpaceParams
from utils.parallel import chunk_ranges, ordered_map

logger = logging.getLogger(__name__)

ROW_CHUNK = 256
POWER_STEPS = 50


def check_solvable(params: SpaceParams) -> None:
    if params.kind is not SpaceKind.BERGMAN or not 1.0 <= params.p < math.inf:
        raise PreconditionError(
            f"interpolation solvers need Bergman parameters with 1 <= p < inf (got p={params.p}, alpha={params.alpha})"
        )


def extension_exponent(params: SpaceParams, m: float) -> float:
    """s = n+1+α+m for p = 1 (m > 0); s = n+1+αp for 1 < p < ∞."""
    check_solvable(params)
    if params.p == 1.0:
        if not m > 0:
            raise PreconditionError(f"p = 1 needs m > 0, got {m}")
        return params.n + 1 + params.alpha + m
    return params.n + 1 + params.weight_exponent


def make_extension(params: SpaceParams, m: float = 1.0) -> ExtensionParams:
    s = extension_exponent(params, m)
    if not s > params.beta:
        raise PreconditionError(f"kernel exponent {s} must exceed (n+1)/p + alpha = {params.beta}")
    return ExtensionParams(m=m, s=s)


def node_weights(seq: PointSeq) -> np.ndarray:
    """1 − |a_k|²."""
    return 1.0 - norm_sq(seq.points)


def approx_extension(values: Any, seq: PointSeq, params: SpaceParams, ext: ExtensionParams) -> KernelSumNode:
    v = np.asarray(values, dtype=complex).ravel()
    if v.size != len(seq):
        raise PreconditionError(f"{v.size} values for {len(seq)} points")
    return kernel_sum(seq.points, v * node_weights(seq) ** ext.s, ext.s)


def te_matrix(seq: PointSeq, params: SpaceParams, ext: ExtensionParams) -> np.ndarray:
    """B_jk = ((1−|a_k|²)/(1−⟨a_j, a_k⟩))^s on the principal branch; unit diagonal."""
    pts = seq.points
    w = node_weights(seq)

    def rows(block: range) -> np.ndarray:
        inner = np.sum(pts[block.start : block.stop, None, :] * pts[None, :, :].conj(), axis=-1)
        return (w[None, :] ** ext.s) * np.exp(-ext.s * np.log(1.0 - inner))

    if len(pts) == 0:
        return np.zeros((0, 0), dtype=complex)
    B = np.concatenate(ordered_map(rows, chunk_ranges(len(pts), ROW_CHUNK)))
    np.fill_diagonal(B, 1.0)
    return B


def _weighted_offdiag(seq: PointSeq, params: SpaceParams, ext: ExtensionParams) -> np.ndarray:
    """|D (B − I) D^{-1}| with D = diag((1−|a_k|²)^β)."""
    B = te_matrix(seq, params, ext)
    np.fill_diagonal(B, 0.0)
    d = node_weights(seq) ** params.beta
    return np.abs(B) * d[:, None] / d[None, :]


def te_deviation(seq: PointSeq, params: SpaceParams, ext: ExtensionParams) -> float:
    """
    Bound for ‖TE − Id‖ on ℓ^p_β.

    p = 1: the weighted column sums of |B − I|, which are the rows of
    K(a, m, n+1+α). p > 1: ‖M‖_1^{1/p} ‖M‖_∞^{1/q} for M = |D(B−I)D^{-1}|.

    Neumann is only allowed when this value is < 1, so it has to be an upper
    bound. te_norm_estimate gives the sharper power-method value, which only
    bounds the norm from below and is reported next to it.
    """
    check_solvable(params)
    if len(seq) < 2:
        return 0.0
    if params.p == 1.0:
        return max(k_rows(seq.points, ext.s - params.beta, params.beta))
    M = _weighted_offdiag(seq, params, ext)
    col = max(math.fsum(c) for c in M.T)
    row = max(math.fsum(r) for r in M)
    p = params.p
    return col ** (1.0 / p) * row ** (1.0 - 1.0 / p)


def _dual_power(x: np.ndarray, r: float) -> np.ndarray:
    """The ℓ^{r'}-dual vector of x for Boyd's iteration."""
    mag = np.abs(x)
    out = np.zeros_like(x)
    nz = mag > 0
    out[nz] = mag[nz] ** (r - 1.0) * x[nz] / mag[nz]
    return out


def te_norm_estimate(seq: PointSeq, params: SpaceParams, ext: ExtensionParams, seed: int = 0) -> float:
    """
    Lower estimate of ‖D(B−I)D^{-1}‖_{p→p} by Boyd's power method (50 steps).
    """
    check_solvable(params)
    if len(seq) < 2:
        return 0.0
    B = te_matrix(seq, params, ext)
    np.fill_diagonal(B, 0.0)
    d = node_weights(seq) ** params.beta
    C = B * d[:, None] / d[None, :]
    p = params.p
    q = math.inf if p == 1.0 else p / (p - 1.0)
    x = np.ones(len(seq), dtype=complex)
    x /= np.linalg.norm(x, p)
    estimate = 0.0
    for _ in range(POWER_STEPS):
        y = C @ x
        estimate = float(np.linalg.norm(y, p))
        if estimate == 0.0:
            break
        z = C.conj().T @ _dual_power(y, p)
        if math.isinf(q):
            x_next = np.zeros_like(x)
            x_next[int(np.argmax(np.abs(z)))] = 1.0
        else:
            x_next = _dual_power(z, q)
            x_next /= np.linalg.norm(x_next, p)
        if np.allclose(x_next, x, rtol=0, atol=1e-15):
            break
        x = x_next
    return estimate


def weighted_norm(values: np.ndarray, weights: np.ndarray, p: float) -> float:
    """(Σ (w_k |v_k|)^p)^{1/p}."""
    x = weights * np.abs(values)
    if x.size == 0:
        return 0.0
    return float(np.sum(x**p) ** (1.0 / p))
