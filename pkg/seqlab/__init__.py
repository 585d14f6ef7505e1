from .diagnostics import (
    automorphic_k_value,
    carleson_beta_test,
    carleson_profile,
    carleson_ratio,
    default_windows,
    k_matrix,
    k_value,
    separation,
    sequence_measure,
    sup_z_k_value,
)
from .models import KReport, Partition, PointMeasure, PointSeq, WindowSet
from .nets import (
    apply_automorphism_to_seq,
    generate_net,
    geometric_disk_net,
    layer_slope,
    perturb,
    probe_grid,
    union,
)
from .partition import mills_partition, split_until_interpolating

__all__ = [
    "KReport",
    "Partition",
    "PointMeasure",
    "PointSeq",
    "WindowSet",
    "apply_automorphism_to_seq",
    "automorphic_k_value",
    "carleson_beta_test",
    "carleson_profile",
    "carleson_ratio",
    "default_windows",
    "generate_net",
    "geometric_disk_net",
    "k_matrix",
    "k_value",
    "layer_slope",
    "mills_partition",
    "perturb",
    "probe_grid",
    "separation",
    "sequence_measure",
    "split_until_interpolating",
    "sup_z_k_value",
    "union",
]
