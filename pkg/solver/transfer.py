"""
Moving an interpolating sequence from one weighted space to another: dual
functions f_k of the source space are multiplied by kernel factors g_k that
fix the target weight at the nodes.
"""

import logging
import math
from typing import Any, List, Optional, Sequence

import numpy as np

from errors import PreconditionError
from geometry.ball import as_points, norm_sq, require_interior
from seqlab.models import PointSeq
from seqlab.nets import probe_grid
from solver.extension import node_weights
from solver.models import DualFamily
from spaces.functions import add, constant, kernel_fn, multiply, scale
from spaces.inclusions import transfer_regime
from spaces.models import SpaceParams
from utils.parallel import chunk_ranges, ordered_map

logger = logging.getLogger(__name__)

DEFAULT_M = 2.0
GRID_CHUNK = 1024


def _check_pair(params: SpaceParams, target: SpaceParams, m: float) -> str:
    regime = transfer_regime(params, target)
    if regime is None:
        raise PreconditionError(
            f"no transfer from (p={params.p}, alpha={params.alpha}) to (p={target.p}, alpha={target.alpha}): "
            "need p <= p' with (n+1)/p+alpha < (n+1)/p'+alpha', or p >= p' with alpha+1/p < alpha'+1/p'"
        )
    if not m > 0:
        raise PreconditionError(f"m must be positive, got {m}")
    return regime


def transfer_basis(
    seq: PointSeq,
    duals: Any,
    params: SpaceParams,
    target: SpaceParams,
    lam: Sequence[complex],
    m: float = DEFAULT_M,
):
    """
    G = Σ_k λ_k g_k f_k with g_k(z) = (1−|a_k|²)^{β+m} / (1−⟨z,a_k⟩)^{β'+m};
    (1−|a_k|²)^{β'} G(a_k) = λ_k.
    """
    regime = _check_pair(params, target, m)
    functions = duals.functions if isinstance(duals, DualFamily) else list(duals)
    lam = np.asarray(lam, dtype=complex).ravel()
    if not (len(functions) == len(seq) == lam.size):
        raise PreconditionError(f"{len(functions)} duals, {len(seq)} points and {lam.size} coefficients")
    logger.debug("Transfer regime %s with m=%g", regime, m)
    w = node_weights(seq)
    terms = []
    for k in np.flatnonzero(lam):
        g_k = scale(lam[k] * w[k] ** (params.beta + m), kernel_fn(target.beta + m, seq.points[k]))
        terms.append(multiply(g_k, functions[k]))
    if not terms:
        return constant(0.0)
    return add(*terms)


def kernel_weight_sum_probe(
    seq: PointSeq,
    params: SpaceParams,
    target: SpaceParams,
    m: float,
    A: float,
    z_grid: Optional[Any] = None,
) -> float:
    """
    Grid sup of Σ_k |g_k(z)|^A (1−|z|²)^{−A(β−β')}, which stays bounded when
    (β+m)A − n − 1 > −1.
    """
    if not (params.beta + m) * A - params.n - 1 > -1:
        raise PreconditionError(f"need (beta+m)A - n - 1 > -1, got {(params.beta + m) * A - params.n - 1}")
    if len(seq) == 0:
        return 0.0
    grid = probe_grid(seq.n, extra=seq.points) if z_grid is None else as_points(z_grid, seq.n)
    require_interior(grid, "grid point")
    numer = node_weights(seq) ** ((params.beta + m) * A)
    exponent = (target.beta + m) * A
    shift = -A * (params.beta - target.beta)

    def chunk_max(rows: range) -> float:
        z = grid[rows.start : rows.stop]
        gaps = np.abs(1.0 - z @ seq.points.conj().T)
        terms = numer[None, :] / gaps**exponent
        scaled = (1.0 - norm_sq(z)) ** shift
        return max(math.fsum(row) * s for row, s in zip(terms, scaled))

    return max(ordered_map(chunk_max, chunk_ranges(len(grid), GRID_CHUNK)))


def transfer_targets(seq: PointSeq, G, target: SpaceParams) -> List[complex]:
    """(1−|a_k|²)^{β'} G(a_k), for checking a transfer."""
    if len(seq) == 0:
        return []
    return list(G.evaluate(seq.points) * node_weights(seq) ** target.beta)
