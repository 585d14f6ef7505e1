"""
Command registry and the single entry point that turns a RunConfig into a
RunReport and an exit code.
"""

import logging
from typing import Dict, Tuple, Type

from models import EXIT_CODES, Command, RunConfig, RunReport
from steps.density_steps import DensityStep, VanishStep, VerdictStep
from steps.inputs import make_error
from steps.sequence_steps import (
    BetaTestStep,
    CarlesonStep,
    GenStep,
    KValStep,
    MillsStep,
    SepStep,
    SplitStep,
    SupZStep,
)
from steps.solver_steps import AddPointsStep, DualsStep, InterpStep, NormStep, StabilityStep, TransferStep
from steps.step import Step
from steps.sweep_step import SweepStep

logger = logging.getLogger(__name__)

STEPS: Dict[Command, Type[Step]] = {
    Command.GEN: GenStep,
    Command.SEP: SepStep,
    Command.KVAL: KValStep,
    Command.SUPZ: SupZStep,
    Command.CARLESON: CarlesonStep,
    Command.BETA_TEST: BetaTestStep,
    Command.MILLS: MillsStep,
    Command.SPLIT: SplitStep,
    Command.NORM: NormStep,
    Command.INTERP: InterpStep,
    Command.DUALS: DualsStep,
    Command.TRANSFER: TransferStep,
    Command.ADD_POINTS: AddPointsStep,
    Command.STABILITY: StabilityStep,
    Command.DENSITY: DensityStep,
    Command.VERDICT: VerdictStep,
    Command.VANISH: VanishStep,
    Command.SWEEP: SweepStep,
}


def run(config: RunConfig) -> Tuple[RunReport, int]:
    step = STEPS[config.command]()
    try:
        outcome = step.execute(config)
    except Exception as e:
        # single exit point for errors
        error = make_error(e, origin=type(step).__name__, config=config)
        logger.warning("%s failed (%s): %s", step.name, error.category.value, error.message)
        report = RunReport(
            command=config.command.value,
            status="failed",
            config=config.model_dump(mode="json"),
            error=error,
        )
        return report, EXIT_CODES[error.category]
    return (
        RunReport(command=config.command.value, status="success", config=outcome["config"], result=outcome["result"]),
        0,
    )
