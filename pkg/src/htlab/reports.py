"""Deterministic CSV/JSON artifacts for experiment reports.

CSV files are RFC-4180 style: header row, ``.`` decimal separator,
floating-point values in scientific notation with 17 significant digits
(lossless for binary64).  JSON reports embed the config hash and the
tolerances actually used, with sorted keys so identical runs are
byte-identical.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np


def format_value(x) -> str:
    """Canonical cell format: 17-significant-digit scientific for floats."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (complex, np.complexfloating)):
        raise TypeError("split complex values into re/im columns")
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.16e}"
    return str(x)


def write_csv(path, headers, rows) -> None:
    """Write rows (sequences or dicts keyed by header) deterministically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(list(headers))
        for row in rows:
            if isinstance(row, dict):
                row = [row[h] for h in headers]
            writer.writerow([format_value(x) for x in row])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.16e}")
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def write_json(path, payload: dict) -> None:
    """Sorted-key JSON dump with canonical float formatting."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        json.dump(_jsonable(payload), fh, sort_keys=True, indent=1)
        fh.write("\n")


@dataclass
class LimitReport:
    """Per-epsilon values of a limit experiment with pass/fail verdict."""

    name: str
    eps: list
    values: list
    predicted: list
    gaps: list
    slope: float | None
    tolerance: float
    passed: bool
    config_hash: str
    extra: dict = field(default_factory=dict)

    def dump(self, path) -> None:
        write_json(path, asdict(self))
