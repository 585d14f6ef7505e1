"""
Adding finitely many points to a solved interpolation problem.

Each new point b is moved to the origin by φ_b; there the product
Π_k (|c_k|² − ⟨w, c_k⟩)/|c_k|², c_k = φ_b(a_k), equals 1 at 0 and vanishes
at every old node, so F = g + (v₀ − g(b)) · (Π ∘ φ_b) keeps the old values
and takes v₀ at b.
"""

import logging
import math
from typing import Any, Iterable, List, Optional, Tuple

import numpy as np

from errors import NumericalError, PreconditionError
from geometry.ball import as_point, automorphism_many, norm_sq, require_interior
from geometry.models import Automorphism, coords_of
from quadrature.models import QuadratureSpec
from seqlab.models import PointSeq
from solver.interpolate import interpolate, residual_max
from solver.models import AugmentStep, ExtensionParams, SolveMethod, SolveReport
from spaces.functions import add, compose, scale, vanishing
from spaces.models import SpaceParams, ValueSeq
from spaces.norms import norm

logger = logging.getLogger(__name__)

NODE_FLOOR = 1e-6


def add_points(
    seq: PointSeq,
    values: Any,
    extra: Iterable[Tuple[Any, complex]],
    params: SpaceParams,
    ext: Optional[ExtensionParams] = None,
    method: Optional[SolveMethod] = None,
    spec: Optional[QuadratureSpec] = None,
    compute_norm: bool = True,
) -> SolveReport:
    """
    Solve on ``seq``, then absorb the (point, value) pairs of ``extra`` one at
    a time. Raises NumericalError when a moved node comes within 1e-6 of the
    origin.
    """
    base = interpolate(seq, values, params, ext=ext, method=method, compute_norm=False)
    nodes = seq.points.copy()
    targets = list(np.asarray(values.values if isinstance(values, ValueSeq) else values, dtype=complex).ravel())
    F = base.interpolant
    steps: List[AugmentStep] = []

    for point, value in extra:
        b = as_point(point, seq.n)
        require_interior(b, "extra point")
        moved = automorphism_many(b, nodes) if len(nodes) else nodes
        moduli = np.sqrt(norm_sq(moved))
        smallest = float(moduli.min()) if len(moduli) else math.inf
        if smallest == 0.0:
            raise PreconditionError("extra point coincides with an existing node")
        if smallest < NODE_FLOOR:
            raise NumericalError(
                f"an existing node lies within {smallest:.3g} of the new point after moving it to the origin"
            )
        correction = complex(value) - complex(F.evaluate(b[None, :])[0])
        if correction != 0:
            bump = compose(vanishing(moved), Automorphism.involution(b))
            F = add(F, scale(correction, bump))
        steps.append(
            AugmentStep(point=coords_of(b), value=complex(value), correction=correction, min_node_modulus=smallest)
        )
        logger.debug("Added point with correction %.3g, min node modulus %.3g", abs(correction), smallest)
        nodes = np.vstack([nodes, b[None, :]])
        targets.append(complex(value))

    union = PointSeq(n=seq.n, points=nodes)
    v = np.asarray(targets, dtype=complex)
    estimate = norm(F, params, spec or QuadratureSpec.default()) if compute_norm else None
    return base.model_copy(
        update={
            "interpolant": F,
            "residual_max": residual_max(F, union, v, params),
            "norm_estimate": estimate,
            "steps": steps,
        }
    )
