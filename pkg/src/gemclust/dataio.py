"""File ingestion and run-record persistence.

Matrices come in as CSV or whitespace-delimited text, one sample per
row, with an optional single header line (auto-detected: first line not
fully numeric). Ground-truth labels are a single column of integers,
ids need not be contiguous. Run records round-trip through JSON; the
assignments array serializes one cluster id per line.
"""

import json
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

import numpy as np

from .exceptions import DataFormatError
from .linalg import validate_data_matrix


def _split(line, fmt):
    if fmt == "csv":
        return [cell.strip() for cell in line.split(",")]
    return line.split()


def load_matrix(path, fmt="csv"):
    """Parse a sample matrix; raises DataFormatError with the offending
    line number on ragged rows, non-numeric cells, or an empty file."""
    if fmt not in ("csv", "whitespace"):
        raise DataFormatError(f"unknown format '{fmt}' (expected csv or whitespace)")
    with open(path, "r", encoding="utf-8") as fh:
        raw = [(no, line.strip()) for no, line in enumerate(fh, start=1)]
    raw = [(no, line) for no, line in raw if line]
    if not raw:
        raise DataFormatError(f"{path}: file is empty")

    def parse(no, line):
        cells = _split(line, fmt)
        try:
            return [float(cell) for cell in cells]
        except ValueError as exc:
            raise DataFormatError(f"{path}: non-numeric cell at line {no}") from exc

    try:
        first = parse(*raw[0])
        start = 1
    except DataFormatError:
        # unparseable first line -> header
        if len(raw) == 1:
            raise DataFormatError(f"{path}: no data rows after header")
        first = parse(*raw[1])
        start = 2
    rows = [first]

    width = len(first)
    for no, line in raw[start:]:
        values = parse(no, line)
        if len(values) != width:
            raise DataFormatError(
                f"{path}: line {no} has {len(values)} columns, expected {width}"
            )
        rows.append(values)
    try:
        return validate_data_matrix(np.array(rows, dtype=np.float64))
    except Exception as exc:
        raise DataFormatError(f"{path}: {exc}") from exc


def load_labels(path):
    """Single-column integer class ids, remapped to 0..c'-1."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = [(no, line.strip()) for no, line in enumerate(fh, start=1)]
    raw = [(no, line) for no, line in raw if line]
    if not raw:
        raise DataFormatError(f"{path}: file is empty")
    values = []
    for no, line in raw:
        try:
            values.append(int(float(line)))
        except ValueError as exc:
            raise DataFormatError(f"{path}: not a single label at line {no}") from exc
    _, remapped = np.unique(np.array(values, dtype=np.int64), return_inverse=True)
    return remapped.astype(np.int64)


@dataclass
class RunRecord:
    """One clustering run: configuration echo, per-sample assignments,
    metrics (None without ground truth), and the objective trace."""

    config: dict
    assignments: list
    metrics: dict | None
    objective_trace: list
    outer_iters: int
    converged: bool
    wall_time: float
    created: str = ""

    def __post_init__(self):
        if not self.created:
            self.created = datetime.now(timezone.utc).isoformat()


def save_report(record, path):
    """Write a RunRecord as indented JSON (assignments land one id per
    line); round-trips through :func:`load_report`."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(asdict(record), fh, indent=2)
        fh.write("\n")


def load_report(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return RunRecord(**data)
