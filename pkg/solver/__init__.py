from .augment import add_points
from .criteria import choose_extension, l1_criterion, lp_criterion, separation_alpha, symmetric_lp_criterion
from .extension import (
    approx_extension,
    extension_exponent,
    make_extension,
    te_deviation,
    te_matrix,
    te_norm_estimate,
)
from .interpolate import FactorizedSystem, dual_constant, dual_family, interpolate, residual_max, restrict
from .models import AugmentStep, CriterionReport, DualFamily, ExtensionParams, SolveMethod, SolveReport
from .stability import interpolation_constant_probe, random_values, stability_iterate
from .transfer import kernel_weight_sum_probe, transfer_basis, transfer_targets

__all__ = [
    "AugmentStep",
    "CriterionReport",
    "DualFamily",
    "ExtensionParams",
    "FactorizedSystem",
    "SolveMethod",
    "SolveReport",
    "add_points",
    "approx_extension",
    "choose_extension",
    "dual_constant",
    "dual_family",
    "extension_exponent",
    "interpolate",
    "interpolation_constant_probe",
    "kernel_weight_sum_probe",
    "l1_criterion",
    "lp_criterion",
    "make_extension",
    "random_values",
    "residual_max",
    "restrict",
    "separation_alpha",
    "stability_iterate",
    "symmetric_lp_criterion",
    "te_deviation",
    "te_matrix",
    "te_norm_estimate",
    "transfer_basis",
    "transfer_targets",
]
