"""Matrix files: {"rows": m, "cols": n, "entries": [[re, im], ...]} in row-major order."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import jsonschema
import numpy as np

from operators.errors import MatrixFormatError
from .report_writer import atomic_write_text

logger = logging.getLogger(__name__)

MATRIX_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["rows", "cols", "entries"],
    "properties": {
        "rows": {"type": "integer", "minimum": 1},
        "cols": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}


def decode_matrix(obj: Any) -> np.ndarray:
    """Validate a parsed matrix document and build the complex array."""
    try:
        jsonschema.validate(instance=obj, schema=MATRIX_SCHEMA)
    except jsonschema.ValidationError as e:
        raise MatrixFormatError(f"Invalid matrix document: {e.message}") from e

    rows, cols = obj["rows"], obj["cols"]
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise MatrixFormatError(
            f"Expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
        )
    pairs = np.asarray(entries, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(pairs)):
        raise MatrixFormatError("Matrix entries must be finite")
    return (pairs[:, 0] + 1j * pairs[:, 1]).reshape(rows, cols)


def encode_matrix(a: np.ndarray) -> Dict[str, Any]:
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise MatrixFormatError(f"Expected a 2-D array, got {arr.ndim} dimensions")
    flat = arr.reshape(-1)
    return {
        "rows": int(arr.shape[0]),
        "cols": int(arr.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def load_matrix(path: Union[str, Path]) -> np.ndarray:
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise MatrixFormatError(f"{path}: not valid JSON ({e.msg})") from e
    except OSError as e:
        raise MatrixFormatError(f"{path}: {e.strerror}") from e
    matrix = decode_matrix(obj)
    logger.debug("loaded %s: %dx%d", path, *matrix.shape)
    return matrix


def save_matrix(path: Union[str, Path], a: np.ndarray) -> None:
    atomic_write_text(Path(path), json.dumps(encode_matrix(a), indent=2) + "\n")
