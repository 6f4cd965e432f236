"""Matrix and report file I/O.

Matrix files are JSON objects ``{"dim": d, "matrix": [[[re, im], ...], ...]}``
with one ``[re, im]`` pair per entry.  Reports are schema-versioned JSON
objects.  All floats are written with 17 significant digits, which
round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import DimensionMismatchError, ParseError


def format_float(x: float) -> str:
    x = float(x)
    if np.isnan(x):
        return "NaN"
    if np.isinf(x):
        # the spellings json.loads parses back natively
        return "Infinity" if x > 0 else "-Infinity"
    s = f"{x:.17g}"
    # keep a decimal marker so values parse back as floats
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def dumps_json(obj: Any, indent: int = 0) -> str:
    """Deterministic JSON with 17-significant-digit floats.

    Dict key order is preserved as inserted, so identical structures
    serialize to identical bytes.
    """
    pad = " " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = [dumps_json(v, indent) for v in obj]
        return "[" + ", ".join(items) + "]"
    if isinstance(obj, dict):
        items = [f"{json.dumps(str(k))}: {dumps_json(v, indent)}" for k, v in obj.items()]
        return "{" + ", ".join(items) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _parse_json(text: str, path: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def matrix_to_obj(matrix: np.ndarray) -> dict:
    m = np.asarray(matrix, dtype=complex)
    return {
        "dim": m.shape[0],
        "matrix": [
            [[float(m[i, j].real), float(m[i, j].imag)] for j in range(m.shape[1])]
            for i in range(m.shape[0])
        ],
    }


def save_matrix(matrix: np.ndarray, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(matrix_to_obj(matrix)))
        fh.write("\n")


def load_matrix(path: str) -> np.ndarray:
    """Load a matrix file; ParseError names the offending entry, and
    DimensionMismatchError reports shape inconsistencies."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = _parse_json(fh.read(), path)
    if not isinstance(obj, dict) or "dim" not in obj or "matrix" not in obj:
        raise ParseError(f"{path}: expected an object with 'dim' and 'matrix' fields")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"{path}: 'dim' must be a positive integer, got {dim!r}")
    rows = obj["matrix"]
    if not isinstance(rows, list) or len(rows) != dim:
        raise DimensionMismatchError(
            f"{path}: expected {dim} rows, got {len(rows) if isinstance(rows, list) else type(rows).__name__}"
        )
    out = np.empty((dim, dim), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise DimensionMismatchError(f"{path}: row {i} does not have {dim} entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(v, (int, float)) for v in entry)
            ):
                raise ParseError(
                    f"{path}: matrix[{i}][{j}] must be a two-element [re, im] array"
                )
            re, im = float(entry[0]), float(entry[1])
            if not (np.isfinite(re) and np.isfinite(im)):
                raise ParseError(f"{path}: matrix[{i}][{j}] is not finite")
            out[i, j] = re + 1j * im
    return out


def save_report(report_obj: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(report_obj))
        fh.write("\n")


def load_report(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        obj = _parse_json(fh.read(), path)
    if not isinstance(obj, dict) or "version" not in obj:
        raise ParseError(f"{path}: expected a report object with a 'version' field")
    return obj
