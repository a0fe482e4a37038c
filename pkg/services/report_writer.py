"""JSON and CSV report emission."""

import csv
import io
import json
import logging
import math
import os
from pathlib import Path
from typing import Any, Iterable, List

import numpy as np
from pydantic import BaseModel

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["suite", "case_id", "lhs", "rhs", "slack", "verdict"]


def sanitize(obj: Any) -> Any:
    """Make a structure strict-JSON safe: non-finite floats become "inf", "-inf" or "nan"."""
    if isinstance(obj, BaseModel):
        return sanitize(obj.model_dump(mode="python"))
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, np.ndarray):
        return sanitize(obj.tolist())
    if isinstance(obj, np.generic):
        return sanitize(obj.item())
    return obj


def to_json(obj: Any) -> str:
    return json.dumps(sanitize(obj), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with tmp.open("w", encoding="utf-8", newline="\n") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(str(tmp), str(path))


def _csv_cell(value: Any) -> str:
    value = sanitize(value)
    if isinstance(value, float):
        return repr(value)
    return "" if value is None else str(value)


def cases_to_csv(cases: Iterable[Any]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for case in cases:
        row = case.model_dump() if isinstance(case, BaseModel) else dict(case)
        writer.writerow([_csv_cell(row.get(col)) for col in CSV_COLUMNS])
    return buffer.getvalue()


def write_report(report: BaseModel, path: Path, fmt: str = "json") -> None:
    """Write a verify report; CSV carries one row per case."""
    if fmt == "json":
        text = to_json(report)
    elif fmt == "csv":
        cases: List[Any] = []
        for summary in getattr(report, "suites", []):
            cases.extend(summary.cases)
        text = cases_to_csv(cases)
    else:
        raise ValueError(f"Unknown report format: {fmt}")
    atomic_write_text(Path(path), text)
    logger.info("report written to %s (%s)", path, fmt)
