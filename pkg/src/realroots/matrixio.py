"""Plain-text matrix format.

    rows cols
    a11 a12 ...
    ...

Entries are written with 17 significant digits, which round-trips every
float64 exactly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import MatrixFormatError, ShapeError
from .linalg import as_matrix


def format_matrix(a) -> str:
    a = as_matrix(a)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    for row in a:
        lines.append(" ".join(f"{x + 0.0:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixFormatError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixFormatError(f"header must be 'rows cols', got {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixFormatError(f"header must be two integers, got {lines[0]!r}") from None
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"dimensions must be positive, got {rows}x{cols}")
    body = lines[1:]
    if len(body) != rows:
        raise MatrixFormatError(f"expected {rows} rows, found {len(body)}")
    data = []
    for i, line in enumerate(body):
        fields = line.split()
        if len(fields) != cols:
            raise MatrixFormatError(f"row {i + 1}: expected {cols} entries, found {len(fields)}")
        try:
            data.append([float(f) for f in fields])
        except ValueError as exc:
            raise MatrixFormatError(f"row {i + 1}: {exc}") from None
    try:
        return as_matrix(data)
    except ShapeError as exc:
        raise MatrixFormatError(str(exc)) from None


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, a) -> None:
    Path(path).write_text(format_matrix(a))
