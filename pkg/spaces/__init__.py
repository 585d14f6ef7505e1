from .functions import (
    AnalyticFunction,
    add,
    affine,
    compose,
    constant,
    dump_function,
    eval_at,
    evaluate,
    function_adapter,
    kernel_fn,
    kernel_sum,
    load_function,
    multiply,
    power,
    scale,
    vanishing,
)
from .inclusions import sequence_space_inclusion, space_inclusion, transfer_regime
from .kernels import apply_Tphi, inner_product, kernel_constant, reproducing_kernel
from .models import HardyProfile, InclusionVerdict, NormEstimate, SpaceKind, SpaceParams, ValueSeq
from .norms import hardy_profile, lipschitz_probe, norm, pointwise_bound_probe, sequence_norm
from .witness import koranyi_packing, witness_F

__all__ = [
    "AnalyticFunction",
    "HardyProfile",
    "InclusionVerdict",
    "NormEstimate",
    "SpaceKind",
    "SpaceParams",
    "ValueSeq",
    "add",
    "affine",
    "apply_Tphi",
    "compose",
    "constant",
    "dump_function",
    "eval_at",
    "evaluate",
    "function_adapter",
    "hardy_profile",
    "inner_product",
    "kernel_constant",
    "kernel_fn",
    "kernel_sum",
    "koranyi_packing",
    "lipschitz_probe",
    "load_function",
    "multiply",
    "norm",
    "pointwise_bound_probe",
    "power",
    "reproducing_kernel",
    "scale",
    "sequence_norm",
    "sequence_space_inclusion",
    "space_inclusion",
    "transfer_regime",
    "vanishing",
    "witness_F",
]
