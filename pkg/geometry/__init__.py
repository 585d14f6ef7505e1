from .ball import (
    apply_automorphism,
    automorphism_many,
    distance_complement,
    herm_inner,
    in_hyperbolic_ball,
    in_koranyi_ball,
    in_window,
    inv_distance,
    mobius_sum,
    paired_distances,
    pairwise_distances,
    quasi_triangle_defect,
    tau_ball_volume,
)
from .models import Automorphism, Complex, Coords, coords_of

__all__ = [
    "Automorphism",
    "Complex",
    "Coords",
    "apply_automorphism",
    "automorphism_many",
    "coords_of",
    "distance_complement",
    "herm_inner",
    "in_hyperbolic_ball",
    "in_koranyi_ball",
    "in_window",
    "inv_distance",
    "mobius_sum",
    "paired_distances",
    "pairwise_distances",
    "quasi_triangle_defect",
    "tau_ball_volume",
]
