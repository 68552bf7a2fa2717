"""
Writers for run artifacts: convergence CSV rows, JSON documents and grids.
"""
import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

import numpy as np

CONVERGENCE_COLUMNS = ("sigma", "n", "h_n", "num_atoms", "delta_n", "rho_n", "lambda", "rel_error")


class ConvergenceWriter:
    """Appends one CSV row per level and flushes it immediately."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = self.path.open("w", newline="")
        self._writer = csv.writer(self._handle)
        self._writer.writerow(CONVERGENCE_COLUMNS)
        self._handle.flush()

    def write(self, row: Dict[str, Any]) -> None:
        self._writer.writerow([_format(row[column]) for column in CONVERGENCE_COLUMNS])
        self._handle.flush()

    def close(self) -> None:
        if not self._handle.closed:
            self._handle.close()

    def __enter__(self) -> "ConvergenceWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _format(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def read_convergence_csv(path: Path):
    with Path(path).open(newline="") as handle:
        return list(csv.DictReader(handle))


def write_json(payload: Dict[str, Any], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=_json_default))
    return path


def _json_default(value: Any):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def write_table(rows: np.ndarray, path: Path, header: Sequence[str], comment: Optional[str] = None) -> Path:
    """CSV of a numeric table with a header row."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        if comment:
            handle.write(f"# {comment}\n")
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([f"{v:.10g}" for v in row])
    return path


def write_rows(rows: Iterable[Dict[str, Any]], path: Path, columns: Sequence[str]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format(row[c]) for c in columns])
    return path
