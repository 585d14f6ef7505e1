"""
Steps for sequence generation and the separation / K / Carleson diagnostics.
"""

import logging
from typing import Any, Dict

from errors import PreconditionError
from models import RunConfig
from seqlab.diagnostics import (
    carleson_beta_test,
    carleson_profile,
    carleson_ratio,
    default_windows,
    k_value,
    separation,
    sequence_measure,
    sup_z_k_value,
)
from seqlab.nets import generate_net, geometric_disk_net, perturb, probe_grid
from seqlab.partition import mills_partition, split_until_interpolating
from steps.inputs import load_matrix, load_point_seq
from steps.step import Step

logger = logging.getLogger(__name__)

DEFAULT_SPLIT_TARGET = 0.5


def _k_exponents(config: RunConfig):
    q = config.q if config.q is not None else config.p
    return config.p, q


class GenStep(Step):
    """``--method net`` (default), ``disk`` or ``perturb`` (of ``--input`` by ``--delta``)."""

    def __init__(self):
        super().__init__(name="Generate", description="Builds a separated net, a geometric disk net or a perturbation")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        method = config.method or "net"
        if method == "net":
            seq = generate_net(config.n, config.r, config.layers, config.seed)
        elif method == "disk":
            seq = geometric_disk_net(config.layers)
        elif method == "perturb":
            seq = perturb(load_point_seq(config.input), config.delta, config.seed)
        else:
            raise PreconditionError(f"unknown generation method {method!r}; use net, disk or perturb")
        return {"size": len(seq), "separation": separation(seq), "sequence": seq}


class SepStep(Step):
    def __init__(self):
        super().__init__(name="Separation", description="Smallest pseudo-hyperbolic distance between points")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        seq = load_point_seq(config.input)
        return {"size": len(seq), "separation": separation(seq)}


class KValStep(Step):
    """K(a, p, q) with the exponents taken from ``--p`` and ``--q`` (q defaults to p)."""

    def __init__(self):
        super().__init__(name="K value", description="Largest weighted row sum K(a, p, q)")

    def run(self, config: RunConfig):
        p, q = _k_exponents(config)
        return k_value(load_point_seq(config.input), p, q)


class SupZStep(Step):
    def __init__(self):
        super().__init__(name="Sup-z K value", description="K sums centred at grid points instead of nodes")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        seq = load_point_seq(config.input)
        p, q = _k_exponents(config)
        grid = probe_grid(seq.n, extra=seq.points, seed=config.seed)
        return {"value": sup_z_k_value(seq, p, q, grid), "grid_size": len(grid)}


class CarlesonStep(Step):
    """Window test of Σ(1−|a_k|²)^β δ_{a_k} (β from ``--beta``, default n) against t^q (``--q``, default n)."""

    def __init__(self):
        super().__init__(name="Carleson", description="Carleson window ratio of the sequence measure")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        seq = load_point_seq(config.input)
        mass_exponent = config.beta if config.beta is not None else float(seq.n)
        q = config.q if config.q is not None else float(seq.n)
        measure = sequence_measure(seq, mass_exponent)
        windows = default_windows(seq.points, seq.n, seed=config.seed)
        levels = list(range(0, 13, 2))
        return {
            "ratio": carleson_ratio(measure, q, windows),
            "profile": {"levels": levels, "ratios": carleson_profile(measure, q, windows, levels)},
        }


class BetaTestStep(Step):
    def __init__(self):
        super().__init__(name="Beta test", description="Kernel test for Carleson measures")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        seq = load_point_seq(config.input)
        mass_exponent = config.q if config.q is not None else float(seq.n)
        beta = config.beta if config.beta is not None else float(seq.n)
        return {"value": carleson_beta_test(sequence_measure(seq, mass_exponent), beta)}


class MillsStep(Step):
    def __init__(self):
        super().__init__(name="Mills partition", description="Bipartition halving within-class row sums")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        partition = mills_partition(load_matrix(config.input))
        return {"sizes": [len(partition.first), len(partition.second)], "partition": partition}


class SplitStep(Step):
    """Split until every part has K(s, s) < ``--target`` (default 0.5), s = n+1+α."""

    def __init__(self):
        super().__init__(name="Split", description="Recursive Mills splitting into interpolating parts")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        seq = load_point_seq(config.input)
        target = config.target if config.target is not None else DEFAULT_SPLIT_TARGET
        parts = split_until_interpolating(seq, config.alpha, target)
        s = seq.n + 1 + config.alpha
        return {
            "parts": [
                {"indices": part.meta["indices"], "depth": part.meta.get("split_depth", 0),
                 "k": k_value(part, s, s).value}
                for part in parts
            ]
        }
