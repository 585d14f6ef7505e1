"""
Mills-type bipartition of a nonnegative symmetric matrix and the recursive
splitting of a crowded sequence into pieces with small K.
"""

import logging
import math
from typing import Any, List

import numpy as np

from errors import NumericalError, PreconditionError
from seqlab.diagnostics import k_matrix, k_value
from seqlab.models import Partition, PointSeq

logger = logging.getLogger(__name__)

SYMMETRY_RTOL = 1e-12
DEFAULT_MAX_DEPTH = 16


def _check_matrix(A: np.ndarray) -> None:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise PreconditionError("matrix entries must be finite")
    if np.any(A < 0):
        raise PreconditionError("matrix entries must be nonnegative")
    if np.any(np.diag(A) != 0):
        raise PreconditionError("matrix diagonal must vanish")
    scale = float(np.max(A)) if A.size else 0.0
    if np.any(np.abs(A - A.T) > SYMMETRY_RTOL * scale):
        raise PreconditionError("matrix must be symmetric")


def _exact_sums(A: np.ndarray, side: np.ndarray):
    within = np.array([math.fsum(A[k, side == side[k]]) for k in range(len(A))])
    cross = np.array([math.fsum(A[k, side != side[k]]) for k in range(len(A))])
    return within, cross


def mills_partition(A: Any) -> Partition:
    """
    Split the indices in two so that every k has Σ_{j in its class} A_jk ≤ M/2,
    M the largest row sum.

    Local search on the cut: an index whose within-class sum exceeds its
    cross-class sum switches sides. Every switch strictly increases the cut
    weight, so the search ends, and at the end within_k ≤ rowsum_k / 2.
    """
    A = np.asarray(A, dtype=float)
    _check_matrix(A)
    size = len(A)
    if size == 0:
        return Partition(first=[], second=[], bound=0.0, within=[])

    row_sums = np.array([math.fsum(row) for row in A])
    bound = float(row_sums.max())
    side = np.arange(size) % 2 == 1

    # fast phase with incremental updates
    within = np.array([A[k, side == side[k]].sum() for k in range(size)])
    cross = row_sums - within
    for _ in range(size * size + 10):
        gain = within - cross
        k = int(np.argmax(gain))
        if gain[k] <= 0:
            break
        same = side == side[k]
        same[k] = False
        column = A[:, k]
        within = np.where(same, within - column, within + column)
        cross = np.where(same, cross + column, cross - column)
        side[k] = not side[k]
        within[k], cross[k] = cross[k], within[k]

    # exact phase: fsum sums, switch whatever still violates
    for _ in range(size * size + 10):
        within, cross = _exact_sums(A, side)
        violators = np.flatnonzero(within > cross)
        if len(violators) == 0:
            break
        k = int(violators[np.argmax((within - cross)[violators])])
        side[k] = not side[k]
    else:
        raise NumericalError("partition search did not settle")

    if np.any(within > bound / 2):
        raise NumericalError("partition violates the half-bound guarantee")
    return Partition(
        first=np.flatnonzero(~side).tolist(),
        second=np.flatnonzero(side).tolist(),
        bound=bound,
        within=within.tolist(),
    )


def split_until_interpolating(
    seq: PointSeq, alpha: float, target: float, max_depth: int = DEFAULT_MAX_DEPTH
) -> List[PointSeq]:
    """
    Bisect with mills_partition until every part has K(part, s, s) < target,
    s = n + 1 + α. Each bisection at least halves K. Parts carry the original
    indices in ``meta["indices"]``.
    """
    if alpha <= -1:
        raise PreconditionError(f"alpha must exceed -1, got {alpha}")
    if not 0.0 < target < 1.0:
        raise PreconditionError(f"target must lie in (0, 1), got {target}")
    s = seq.n + 1 + alpha
    if not math.isfinite(k_value(seq, s, s).value):
        raise PreconditionError("K is not finite for this sequence")

    parts: List[PointSeq] = []

    def recurse(indices: List[int], depth: int) -> None:
        part = seq.subset(indices, split_depth=depth)
        value = k_value(part, s, s).value
        if value < target:
            parts.append(part)
            return
        if depth >= max_depth:
            raise NumericalError(f"splitting did not reach K < {target} within depth {max_depth}")
        halves = mills_partition(k_matrix(part.points, s, s))
        logger.debug("Depth %d: K=%.4g split %d -> %d + %d", depth, value, len(indices),
                     len(halves.first), len(halves.second))
        for half in (halves.first, halves.second):
            if half:
                recurse([indices[i] for i in half], depth + 1)

    recurse(list(range(len(seq))), 0)
    logger.info("Split %d points into %d parts with K < %g", len(seq), len(parts), target)
    return parts
