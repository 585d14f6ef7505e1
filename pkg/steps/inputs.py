"""
Loading and validating the files a run refers to, and turning exceptions
into RunError records.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, TypeAdapter, ValidationError

from errors import ConfigError, NumericalError, PreconditionError
from geometry.models import Complex, Coords
from models import ErrorCategory, RunConfig, RunError
from quadrature.models import QuadratureSpec
from seqlab.models import PointSeq
from spaces.functions import load_function
from spaces.models import SpaceParams

logger = logging.getLogger(__name__)


class ExtraPoint(BaseModel):
    point: Coords
    value: Complex


_values_adapter = TypeAdapter(List[Complex])
_extra_adapter = TypeAdapter(List[ExtraPoint])


# ---------- helpers ----------
def _load_json_from_file(path: Optional[str], what: str) -> Any:
    if not path:
        raise PreconditionError(f"--{what} is required for this command")
    file = Path(path)
    if not file.exists():
        raise FileNotFoundError(f"{what} file not found: {file}")
    return json.loads(file.read_text(encoding="utf-8"))


def load_point_seq(path: Optional[str], what: str = "input") -> PointSeq:
    """A PointSeq file, or the report of a `gen` run."""
    data = _load_json_from_file(path, what)
    if isinstance(data, dict) and "command" in data and isinstance(data.get("result"), dict):
        data = data["result"].get("sequence", data["result"])
    return PointSeq.model_validate(data)


def load_values(path: Optional[str], what: str = "values") -> np.ndarray:
    """A list of complex numbers, bare or under a "values" key."""
    data = _load_json_from_file(path, what)
    if isinstance(data, dict):
        data = data.get("values")
    return np.asarray(_values_adapter.validate_python(data), dtype=complex)


def load_matrix(path: Optional[str]) -> np.ndarray:
    data = _load_json_from_file(path, "input")
    if isinstance(data, dict):
        data = data.get("matrix")
    matrix = np.asarray(data, dtype=float)
    if matrix.ndim != 2:
        raise ValueError(f"matrix must be a list of rows, got {matrix.ndim} dimensions")
    return matrix


def load_extra(path: Optional[str]) -> List[Tuple[np.ndarray, complex]]:
    """[{"point": [[re, im], ...], "value": [re, im]}, ...]."""
    items = _extra_adapter.validate_python(_load_json_from_file(path, "extra"))
    return [(np.asarray(item.point, dtype=complex), item.value) for item in items]


def load_function_file(path: Optional[str]):
    if not path:
        raise PreconditionError("--function is required for this command")
    file = Path(path)
    if not file.exists():
        raise FileNotFoundError(f"function file not found: {file}")
    return load_function(file.read_text(encoding="utf-8"))


def space_params(config: RunConfig) -> SpaceParams:
    return SpaceParams(n=config.n, p=config.p, alpha=config.alpha)


def target_params(config: RunConfig) -> SpaceParams:
    if config.p_target is None or config.alpha_target is None:
        raise PreconditionError("--p-target and --alpha-target are required for this command")
    return SpaceParams(n=config.n, p=config.p_target, alpha=config.alpha_target)


def quadrature_spec(config: RunConfig) -> QuadratureSpec:
    return QuadratureSpec.default(samples=config.samples, seed=config.seed)


# ---------- errors ----------
def make_error(e: Exception, *, origin: str, config: Optional[RunConfig] = None) -> RunError:
    """Centralized exception → RunError conversion."""
    context: Dict[str, Any] = {}
    if isinstance(e, ConfigError):
        category = ErrorCategory.CONFIG
    elif isinstance(e, FileNotFoundError):
        category = ErrorCategory.IO
        if config is not None:
            context = {"input": config.input, "values": config.values}
    elif isinstance(e, OSError):
        category = ErrorCategory.IO
    elif isinstance(e, json.JSONDecodeError):
        category = ErrorCategory.JSON
        context = {"line": e.lineno, "column": e.colno}
    elif isinstance(e, PreconditionError):
        category = ErrorCategory.PRECONDITION
    elif isinstance(e, ValidationError):
        category = ErrorCategory.VALIDATION
        context = {"errors": e.error_count()}
    elif isinstance(e, NumericalError):
        category = ErrorCategory.NUMERICAL
    elif isinstance(e, ValueError):
        category = ErrorCategory.VALIDATION
    else:
        category = ErrorCategory.UNKNOWN
    logger.debug("Classified %s from %s as %s", type(e).__name__, origin, category.value)
    return RunError(origin=origin, category=category, message=str(e), retryable=False, context=context)
