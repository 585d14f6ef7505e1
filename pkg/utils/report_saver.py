import csv
import io
import json
import logging
import math
import os
import tempfile
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from config import RuntimeConfig

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """
    Plain JSON data from models, numpy values and complex numbers. Complex
    numbers become [re, im]; non-finite floats become "Infinity", "-Infinity"
    or "NaN".
    """
    if isinstance(value, BaseModel):
        return to_jsonable(value.model_dump())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(float(value.real)), to_jsonable(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "NaN"
        if math.isinf(value):
            return "Infinity" if value > 0 else "-Infinity"
        return value
    return value


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV with '.' decimals and repr floats."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buffer.getvalue()


class ReportSaver:
    """
    Writes run reports. The report itself holds no timestamp so reruns are
    byte-identical; the wall-clock time and runtime settings go to the
    ``<output>.meta.json`` sidecar.
    """

    def __init__(self, file_path: Optional[str] = None):
        self.file_path = file_path

    def render(self, report: Dict[str, Any]) -> str:
        return json.dumps(to_jsonable(report), indent=2, ensure_ascii=False, allow_nan=False) + "\n"

    def save(self, report: Dict[str, Any]) -> str:
        text = self.render(report)
        if not self.file_path:
            return text
        _atomic_write(self.file_path, text)
        metadata = {
            "report": os.path.basename(self.file_path),
            "last_updated": datetime.now().isoformat(),
            "settings": RuntimeConfig.get_all_settings(),
        }
        _atomic_write(self.file_path + ".meta.json", json.dumps(metadata, indent=2) + "\n")
        logger.info("Report saved to %s", self.file_path)
        return text

    def save_csv(self, path: str, header: Sequence[str], rows: List[Sequence[Any]]) -> None:
        _atomic_write(path, render_csv(header, rows))
        logger.info("CSV saved to %s", path)
