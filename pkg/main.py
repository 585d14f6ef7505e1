"""
Command-line entry point: ``bergman run COMMAND [flags]`` and ``bergman schema``.
"""

import logging
from pathlib import Path
from typing import NoReturn, Optional

import typer
from pydantic import ValidationError

from config import RuntimeConfig
from errors import ConfigError
from models import Command, ErrorCategory, RunConfig, RunError, RunReport
from steps.inputs import make_error
from steps.runner import run as run_step
from utils.report_saver import ReportSaver

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).resolve().parent / "schemas" / "report.schema.json"
UNKNOWN_COMMAND_EXIT = 1

app = typer.Typer(add_completion=False, help="Weighted Bergman space interpolation toolkit.")


def _configure_logging() -> None:
    try:
        level = RuntimeConfig.get_log_level()
    except ConfigError:
        level = "WARNING"
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _parse_grid(grid: Optional[str]) -> list:
    if not grid:
        return []
    return [float(item) for item in grid.split(",") if item.strip()]


def _emit(report: RunReport, output: Optional[str]) -> None:
    text = ReportSaver(output).save(report.model_dump())
    if not output:
        typer.echo(text, nl=False)


def _failure(command: str, output: Optional[str], error: RunError, code: int) -> NoReturn:
    _emit(RunReport(command=command, status="failed", config={}, error=error), output)
    raise typer.Exit(code)


@app.command()
def run(
    command: str = typer.Argument(..., help="One of: " + ", ".join(c.value for c in Command)),
    input: Optional[str] = typer.Option(None, "--input", help="PointSeq JSON (matrix JSON for mills)"),
    values: Optional[str] = typer.Option(None, "--values", help="Complex targets aligned with --input"),
    output: Optional[str] = typer.Option(None, "--output", help="Report path; stdout when omitted"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    n: int = typer.Option(1, "--n"),
    p: float = typer.Option(2.0, "--p"),
    alpha: float = typer.Option(0.0, "--alpha"),
    m: Optional[float] = typer.Option(None, "--m"),
    q: Optional[float] = typer.Option(None, "--q"),
    beta: Optional[float] = typer.Option(None, "--beta"),
    r: float = typer.Option(0.5, "--r"),
    layers: int = typer.Option(3, "--layers"),
    delta: float = typer.Option(0.01, "--delta"),
    target: Optional[float] = typer.Option(None, "--target"),
    kappa: float = typer.Option(2.0, "--kappa"),
    gamma: Optional[float] = typer.Option(None, "--gamma"),
    samples: Optional[int] = typer.Option(None, "--samples"),
    method: Optional[str] = typer.Option(None, "--method"),
    grid: Optional[str] = typer.Option(None, "--grid", help="Comma-separated values"),
    extra: Optional[str] = typer.Option(None, "--extra"),
    perturbed: Optional[str] = typer.Option(None, "--perturbed"),
    p_target: Optional[float] = typer.Option(None, "--p-target"),
    alpha_target: Optional[float] = typer.Option(None, "--alpha-target"),
    lam: Optional[str] = typer.Option(None, "--lam"),
    function: Optional[str] = typer.Option(None, "--function"),
    trials: int = typer.Option(5, "--trials"),
    param: Optional[str] = typer.Option(None, "--param"),
    stat: Optional[str] = typer.Option(None, "--stat"),
) -> None:
    """Run one toolkit command and write its JSON report."""
    _configure_logging()
    try:
        resolved = Command(command)
    except ValueError:
        error = RunError(origin="main", category=ErrorCategory.VALIDATION, message=f"unknown command {command!r}")
        _failure(command, output, error, UNKNOWN_COMMAND_EXIT)

    try:
        config = RunConfig(
            command=resolved,
            input=input,
            values=values,
            output=output,
            seed=RuntimeConfig.get_default_seed() if seed is None else seed,
            n=n,
            p=p,
            alpha=alpha,
            m=m,
            q=q,
            beta=beta,
            r=r,
            layers=layers,
            delta=delta,
            target=target,
            kappa=kappa,
            gamma=gamma,
            samples=RuntimeConfig.get_default_samples() if samples is None else samples,
            method=method,
            grid=_parse_grid(grid),
            extra=extra,
            perturbed=perturbed,
            p_target=p_target,
            alpha_target=alpha_target,
            lam=lam,
            function=function,
            trials=trials,
            param=param,
            stat=stat,
        )
    except (ConfigError, ValidationError, ValueError) as e:
        error = make_error(e, origin="main")
        _failure(command, output, error, 2)

    report, code = run_step(config)
    _emit(report, output)
    if code:
        raise typer.Exit(code)


@app.command()
def schema(output: Optional[str] = typer.Option(None, "--output")) -> None:
    """Write the JSON schema every report validates against."""
    text = SCHEMA_PATH.read_text(encoding="utf-8")
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        typer.echo(text, nl=False)


if __name__ == "__main__":
    app()
