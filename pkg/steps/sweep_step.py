"""
One-parameter sweeps producing a CSV column of a statistic.
"""

import logging
import math
from pathlib import Path
from typing import Any, Callable, Dict, List

import numpy as np

from errors import PreconditionError
from models import RunConfig
from seqlab.diagnostics import k_value
from seqlab.nets import perturb
from solver.extension import make_extension, te_deviation
from solver.stability import random_values, stability_iterate
from spaces.functions import kernel_fn
from spaces.norms import norm
from spaces.witness import witness_F
from steps.inputs import load_point_seq, quadrature_spec, space_params
from steps.step import Step
from utils.report_saver import ReportSaver

logger = logging.getLogger(__name__)

# statistic -> swept parameter
SWEEP_PARAMS: Dict[str, str] = {
    "kernel_norm": "a",
    "te_deviation": "m",
    "witness_norm": "r",
    "stability_gamma": "delta",
    "kval": "q",
}
DEFAULT_WITNESS_GAMMA = 3.0


def _loglog_slope(xs: List[float], ys: List[float]) -> float:
    x, y = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    if len(x) < 2 or np.any(x <= 0) or np.any(~np.isfinite(y)) or np.any(y <= 0):
        return math.nan
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


class SweepStep(Step):
    """
    ``--stat`` picks the statistic, ``--grid`` the values of its parameter:
    kernel_norm over |a| (N from --gamma, default β+2), te_deviation over m,
    witness_norm over r, stability_gamma over δ, kval over q (p from --p).
    """

    def __init__(self):
        super().__init__(name="Sweep", description="Evaluates one statistic along a parameter grid")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        if not config.grid:
            raise PreconditionError("--grid must list at least one value")
        stat = config.stat or "kernel_norm"
        if stat not in SWEEP_PARAMS:
            raise PreconditionError(f"unknown statistic {stat!r}; choose from {sorted(SWEEP_PARAMS)}")
        param = config.param or SWEEP_PARAMS[stat]
        if param != SWEEP_PARAMS[stat]:
            raise PreconditionError(f"{stat} sweeps over {SWEEP_PARAMS[stat]!r}, not {param!r}")

        evaluate = self._statistic(stat, config)
        rows = [(float(value), evaluate(float(value))) for value in config.grid]
        logger.info("Sweep of %s over %d values of %s", stat, len(rows), param)
        if config.output:
            ReportSaver().save_csv(str(Path(config.output).with_suffix(".csv")), [param, stat], rows)

        result: Dict[str, Any] = {"param": param, "stat": stat, "rows": [{"value": v, "stat": s} for v, s in rows]}
        if stat == "kernel_norm":
            weights = [1.0 - v * v for v, _ in rows]
            result["loglog_slope"] = _loglog_slope(weights, [s for _, s in rows])
        elif stat == "witness_norm":
            result["loglog_slope"] = _loglog_slope([v for v, _ in rows], [s for _, s in rows])
        return result

    def _statistic(self, stat: str, config: RunConfig) -> Callable[[float], float]:
        params = space_params(config)
        spec = quadrature_spec(config)
        if stat == "kernel_norm":
            exponent = config.gamma if config.gamma is not None else params.beta + 2.0

            def kernel_norm(radius: float) -> float:
                a = np.zeros(params.n, dtype=complex)
                a[0] = radius
                return norm(kernel_fn(exponent, a), params, spec.with_pole(a)).value

            return kernel_norm
        if stat == "witness_norm":
            gamma = config.gamma if config.gamma is not None else DEFAULT_WITNESS_GAMMA
            return lambda r: norm(witness_F(gamma, r, config.kappa, params.n, config.seed), params, spec).value

        seq = load_point_seq(config.input)
        if stat == "te_deviation":
            return lambda m: te_deviation(seq, params, make_extension(params, m))
        if stat == "kval":
            return lambda q: k_value(seq, config.p, q).value

        values = random_values(seq, params, config.seed, 0)

        def stability_gamma(delta: float) -> float:
            moved = perturb(seq, delta, config.seed)
            return stability_iterate(seq, moved, values, params).contraction

        return stability_gamma
