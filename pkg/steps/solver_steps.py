"""
Steps for norms and the interpolation solvers.
"""

import logging
from typing import Any, Dict, Optional

import numpy as np

from models import RunConfig
from seqlab.nets import perturb
from solver.augment import add_points
from solver.criteria import choose_extension
from solver.extension import make_extension, node_weights
from solver.interpolate import dual_family, interpolate
from solver.models import ExtensionParams, SolveMethod
from solver.stability import random_values, stability_iterate
from solver.transfer import DEFAULT_M, transfer_basis, transfer_targets
from spaces.models import SpaceParams
from spaces.norms import norm
from steps.inputs import (
    load_extra,
    load_function_file,
    load_point_seq,
    load_values,
    quadrature_spec,
    space_params,
    target_params,
)
from steps.step import Step

logger = logging.getLogger(__name__)


def _extension(config: RunConfig, params: SpaceParams) -> Optional[ExtensionParams]:
    return make_extension(params, config.m) if config.m is not None else None


def _method(config: RunConfig) -> Optional[SolveMethod]:
    return SolveMethod(config.method) if config.method else None


class NormStep(Step):
    def __init__(self):
        super().__init__(name="Norm", description="Norm of a function in B_α^p, H^p or A^{-α}")

    def run(self, config: RunConfig):
        return norm(load_function_file(config.function), space_params(config), quadrature_spec(config))


class InterpStep(Step):
    def __init__(self):
        super().__init__(name="Interpolate", description="Solves for an interpolant through the approximate extension")

    def run(self, config: RunConfig):
        params = space_params(config)
        seq = load_point_seq(config.input)
        values = load_values(config.values)
        return interpolate(
            seq, values, params, ext=_extension(config, params), method=_method(config), spec=quadrature_spec(config)
        )


class DualsStep(Step):
    def __init__(self):
        super().__init__(name="Duals", description="Biorthogonal family f_j and its norm bound")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        params = space_params(config)
        seq = load_point_seq(config.input)
        ext = _extension(config, params) or choose_extension(seq, params)[0]
        family = dual_family(seq, params, ext, spec=quadrature_spec(config), compute_norms=True)
        scaled = np.array([f.evaluate(seq.points) for f in family.functions]) * node_weights(seq)[:, None] ** params.beta
        error = float(np.max(np.abs(scaled - np.eye(len(seq))))) if len(seq) else 0.0
        return {"family": family, "biorthogonality_error": error, "extension": ext}


class TransferStep(Step):
    """Duals for (--p, --alpha) turned into an interpolant for (--p-target, --alpha-target) with targets --lam."""

    def __init__(self):
        super().__init__(name="Transfer", description="Moves interpolation to another weighted space")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        params = space_params(config)
        target = target_params(config)
        seq = load_point_seq(config.input)
        lam = load_values(config.lam, "lam")
        ext, _ = choose_extension(seq, params)
        duals = dual_family(seq, params, ext)
        m = config.m if config.m is not None else DEFAULT_M
        G = transfer_basis(seq, duals, params, target, lam, m=m)
        achieved = np.asarray(transfer_targets(seq, G, target), dtype=complex)
        return {
            "function": G,
            "node_error": float(np.max(np.abs(achieved - lam))) if len(seq) else 0.0,
            "norm_estimate": norm(G, target, quadrature_spec(config)),
        }


class AddPointsStep(Step):
    def __init__(self):
        super().__init__(name="Add points", description="Extends an interpolant to finitely many extra points")

    def run(self, config: RunConfig):
        params = space_params(config)
        return add_points(
            load_point_seq(config.input),
            load_values(config.values),
            load_extra(config.extra),
            params,
            ext=_extension(config, params),
            method=_method(config),
            spec=quadrature_spec(config),
        )


class StabilityStep(Step):
    """Perturbed nodes come from --perturbed, else from perturbing --input by --delta; values default to random."""

    def __init__(self):
        super().__init__(name="Stability", description="Solves on perturbed nodes with the original solver")

    def run(self, config: RunConfig):
        params = space_params(config)
        seq = load_point_seq(config.input)
        moved = load_point_seq(config.perturbed, "perturbed") if config.perturbed else perturb(seq, config.delta, config.seed)
        values = load_values(config.values) if config.values else random_values(seq, params, config.seed, 0)
        return stability_iterate(seq, moved, values, params, _extension(config, params), _method(config))
