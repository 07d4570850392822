"""Text grid format for hypercubes.

::

    m N
    h_1 h_2 ... h_n
    <rows of N space-separated symbols>

Consecutive 2-dimensional slices are separated by one blank line, 3-dimensional
slices by two, and so on up to m-2 blank lines.  Lines starting with ``#`` are
comments.  The first coordinate varies slowest.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import LatinError, LatinHypercube, Partition, as_partition


class GridParseError(LatinError, ValueError):
    pass


@dataclass(frozen=True)
class GridDocument:
    hypercube: LatinHypercube
    partition: Partition

    @property
    def dimension(self):
        return self.hypercube.dimension

    @property
    def order(self):
        return self.hypercube.order


def _emit(arr, lines):
    if arr.ndim == 2:
        lines.extend(" ".join(str(int(x)) for x in row) for row in arr)
        return
    for k, sub in enumerate(arr):
        if k:
            lines.extend([""] * (arr.ndim - 2))
        _emit(sub, lines)


def serialize(doc: GridDocument) -> str:
    h = doc.hypercube
    lines = [f"{h.dimension} {h.order}", " ".join(str(x) for x in doc.partition.parts)]
    arr = h.array
    if arr.ndim == 1:
        lines.append(" ".join(str(int(x)) for x in arr))
    else:
        _emit(arr, lines)
    return "\n".join(lines) + "\n"


def parse(text: str) -> GridDocument:
    lines = [ln.strip() for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    body = [ln for ln in lines if ln]
    if len(body) < 2:
        raise GridParseError("expected a header line and a partition line")
    try:
        m, n = (int(x) for x in body[0].split())
    except ValueError:
        raise GridParseError(f"bad header {body[0]!r}; expected 'm N'") from None
    if m < 1 or n < 1:
        raise GridParseError("dimension and order must be positive")
    try:
        partition = as_partition([int(x) for x in body[1].split()])
    except (ValueError, LatinError) as exc:
        raise GridParseError(f"bad partition line {body[1]!r}: {exc}") from None
    if partition.order != n:
        raise GridParseError(f"partition sums to {partition.order}, header says order {n}")
    rows = []
    for ln in body[2:]:
        try:
            row = [int(x) for x in ln.split()]
        except ValueError:
            raise GridParseError(f"non-integer entry in row {ln!r}") from None
        if len(row) != n:
            raise GridParseError(f"row {ln!r} has {len(row)} entries, expected {n}")
        rows.append(row)
    expected_rows = n ** (m - 1) if m > 1 else 1
    if len(rows) != expected_rows:
        raise GridParseError(f"found {len(rows)} rows, expected {expected_rows}")
    values = np.array(rows, dtype=np.int64)
    if values.min() < 1 or values.max() > n:
        raise GridParseError(f"symbols must lie in 1..{n}")
    return GridDocument(LatinHypercube(values.reshape((n,) * m)), partition)


def read_grid(path) -> GridDocument:
    return parse(Path(path).read_text())


def write_grid(path, hypercube: LatinHypercube, partition) -> None:
    Path(path).write_text(serialize(GridDocument(hypercube, as_partition(partition))))
