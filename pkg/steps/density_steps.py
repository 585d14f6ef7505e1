from pathlib import Path
from typing import Any, Dict, Optional

from density.seip import seip_density, vanishing_at_origin, vanishing_report, verdict_from_density
from models import RunConfig
from steps.inputs import load_point_seq, quadrature_spec, space_params
from steps.step import Step
from utils.report_saver import ReportSaver


def _radii(config: RunConfig) -> Optional[list]:
    return list(config.grid) or None


class DensityStep(Step):
    """``--grid`` overrides the radii; with ``--output`` the profile also goes to a .csv next to it."""

    def __init__(self):
        super().__init__(name="Density", description="Upper uniform density of a disk sequence")

    def run(self, config: RunConfig):
        report = seip_density(load_point_seq(config.input), _radii(config))
        if config.output:
            ReportSaver().save_csv(str(Path(config.output).with_suffix(".csv")), ["r", "sup_value"], report.r_profile)
        return report


class VerdictStep(Step):
    def __init__(self):
        super().__init__(name="Verdict", description="Density compared with alpha + 1/p")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        params = space_params(config)
        report = seip_density(load_point_seq(config.input), _radii(config))
        return {
            "verdict": verdict_from_density(report.density, params.smoothness),
            "density": report.density,
            "threshold": params.smoothness,
        }


class VanishStep(Step):
    def __init__(self):
        super().__init__(name="Vanish", description="Function vanishing on the sequence with value 1 at the origin")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        params = space_params(config)
        seq = load_point_seq(config.input)
        return {
            "function": vanishing_at_origin(seq, params),
            "report": vanishing_report(seq, params, spec=quadrature_spec(config), trials=config.trials, seed=config.seed),
        }
