"""Partitions, latin hypercubes, block structures and outline arrays.

Every type here is immutable once built. Symbols and partition parts are
1-based, matching the usual combinatorial convention that a latin square of
order N uses the symbols 1..N.  Hypercube entries are stored as a read-only
numpy array in C order, so the flat layout is row-major with the last
coordinate varying fastest.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Sequence

import numpy as np


class LatinError(Exception):
    """Base class for errors raised by this package."""


class PartitionParseError(LatinError, ValueError):
    pass


class DomainError(LatinError, ValueError):
    """An argument is well-formed but outside the operation's domain."""


class NoSuchObject(LatinError):
    """A requested object is proved not to exist."""


class Unresolved(LatinError):
    """No implemented rule settles the case either way."""


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class Partition:
    """An integer partition with parts stored in non-increasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(h) for h in self.parts)
        if not parts:
            raise DomainError("a partition needs at least one part")
        if any(h < 1 for h in parts):
            raise DomainError(f"parts must be positive, got {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def from_compressed(cls, pairs: Iterable[tuple[int, int]]) -> "Partition":
        return cls(tuple(v for v, k in pairs for _ in range(k)))

    @property
    def order(self) -> int:
        return sum(self.parts)

    @property
    def count(self) -> int:
        return len(self.parts)

    def compressed(self) -> tuple[tuple[int, int], ...]:
        """(value, multiplicity) pairs, largest value first."""
        return tuple((v, len(list(g))) for v, g in groupby(self.parts))

    def distinct(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.compressed())

    def scaled(self, k: int) -> "Partition":
        return Partition(tuple(k * h for h in self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return " ".join(v if k == 1 else f"{v}^{k}" for v, k in
                        ((str(v), k) for v, k in self.compressed()))


def parse_partition(text: str) -> Partition:
    """Parse exponent notation such as ``"2^2 1"`` or ``"3 3 2"``.

    Commas are accepted as separators too. Parts are sorted into
    non-increasing order.
    """
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise PartitionParseError("empty partition")
    parts = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if m is None:
            if re.match(r"^-?\d+(\^-?\d+)?$", tok):
                raise DomainError(f"non-positive part or multiplicity in {tok!r}")
            raise PartitionParseError(f"cannot parse {tok!r} in {text!r}")
        value, mult = int(m.group(1)), int(m.group(2) or 1)
        if value < 1 or mult < 1:
            raise DomainError(f"non-positive part or multiplicity in {tok!r}")
        parts.extend([value] * mult)
    return Partition(tuple(parts))


def as_partition(p) -> Partition:
    if isinstance(p, Partition):
        return p
    if isinstance(p, str):
        return parse_partition(p)
    return Partition(tuple(p))


@dataclass(frozen=True)
class BlockStructure:
    """Consecutive diagonal intervals, one per part, covering 1..N."""

    sizes: tuple[int, ...]

    @property
    def order(self) -> int:
        return sum(self.sizes)

    @property
    def starts(self) -> tuple[int, ...]:
        """0-based start offsets."""
        out, acc = [], 0
        for h in self.sizes:
            out.append(acc)
            acc += h
        return tuple(out)

    @property
    def intervals(self) -> tuple[range, ...]:
        """1-based index ranges S_i."""
        return tuple(range(s + 1, s + h + 1) for s, h in zip(self.starts, self.sizes))

    @property
    def slices(self) -> tuple[slice, ...]:
        return tuple(slice(s, s + h) for s, h in zip(self.starts, self.sizes))

    def labels(self) -> np.ndarray:
        """0-based block index of each 0-based position 0..N-1."""
        return np.repeat(np.arange(len(self.sizes)), self.sizes)

    def __len__(self):
        return len(self.sizes)


def block_intervals(p) -> BlockStructure:
    if isinstance(p, Partition):
        return BlockStructure(p.parts)
    sizes = tuple(int(h) for h in p)
    if any(h < 1 for h in sizes):
        raise DomainError(f"block sizes must be positive, got {sizes}")
    return BlockStructure(sizes)


class LatinHypercube:
    """An m-dimensional array of side N over the symbols 1..N.

    The latin property is not enforced on construction; use
    :func:`latinreal.verify.is_latin`. Symbol range and shape are checked.
    """

    __slots__ = ("_array",)

    def __init__(self, entries, dimension: int | None = None, order: int | None = None):
        arr = np.array(entries, dtype=np.int64)
        if dimension is not None and order is not None and arr.ndim == 1:
            arr = arr.reshape((order,) * dimension)
        if arr.ndim < 1:
            raise DomainError("a hypercube needs at least one axis")
        n = arr.shape[0]
        if any(s != n for s in arr.shape):
            raise DomainError(f"hypercube must have equal sides, got shape {arr.shape}")
        if dimension is not None and arr.ndim != dimension:
            raise DomainError(f"expected dimension {dimension}, got {arr.ndim}")
        if order is not None and n != order:
            raise DomainError(f"expected order {order}, got {n}")
        if arr.size and (arr.min() < 1 or arr.max() > n):
            raise DomainError(f"entries must lie in 1..{n}")
        arr.setflags(write=False)
        self._array = arr

    @classmethod
    def from_flat(cls, entries: Sequence[int], dimension: int, order: int) -> "LatinHypercube":
        return cls(np.asarray(entries, dtype=np.int64).reshape((order,) * dimension))

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def dimension(self) -> int:
        return self._array.ndim

    @property
    def order(self) -> int:
        return self._array.shape[0]

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._array.ravel())

    def linear_index(self, coords: Sequence[int]) -> int:
        """Flat position of 0-based ``coords``."""
        return int(np.ravel_multi_index(tuple(coords), self._array.shape))

    def coordinates(self, index: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(index, self._array.shape))

    def layer(self, axis: int, value: int) -> np.ndarray:
        """The (m-1)-dimensional slice with coordinate ``axis`` fixed (0-based)."""
        return np.take(self._array, value, axis=axis)

    def __getitem__(self, coords):
        return self._array[coords]

    def __eq__(self, other):
        if not isinstance(other, LatinHypercube):
            return NotImplemented
        return self._array.shape == other._array.shape and bool(np.array_equal(self._array, other._array))

    def __hash__(self):
        return hash((self._array.shape, self._array.tobytes()))

    def __repr__(self):
        return f"LatinHypercube(dimension={self.dimension}, order={self.order})"

    def tolist(self):
        return self._array.tolist()


def _sizes(seq, what) -> tuple[int, ...]:
    sizes = tuple(int(x) for x in (seq.parts if isinstance(seq, Partition) else seq))
    if not sizes or any(x < 1 for x in sizes):
        raise DomainError(f"{what} must be a non-empty sequence of positive integers")
    return sizes


class _Outline:
    __slots__ = ("_groups", "_cells")
    _arity = 0

    def __init__(self, groups, cells, *, check: bool = True):
        groups = tuple(_sizes(g, "outline grouping") for g in groups)
        if len(groups) != self._arity:
            raise DomainError(f"expected {self._arity} groupings, got {len(groups)}")
        totals = {sum(g) for g in groups}
        if len(totals) != 1:
            raise DomainError(f"groupings must all sum to the same order, got sums {sorted(totals)}")
        arr = np.array(cells, dtype=np.int64)
        want = tuple(len(g) for g in groups[:-1]) + (len(groups[-1]),)
        if arr.shape != want:
            raise DomainError(f"cell array has shape {arr.shape}, expected {want}")
        if arr.size and arr.min() < 0:
            raise DomainError("symbol counts must be non-negative")
        arr.setflags(write=False)
        self._groups = groups
        self._cells = arr
        if check:
            from .verify import validate_outline

            report = validate_outline(self)
            if report is not None:
                raise DomainError(f"not a valid outline: {report.detail}")

    @property
    def cells(self) -> np.ndarray:
        """Count vectors; the last axis indexes amalgamated symbols."""
        return self._cells

    @property
    def order(self) -> int:
        return sum(self._groups[0])

    @property
    def groupings(self) -> tuple[tuple[int, ...], ...]:
        return self._groups

    def cell(self, *idx: int) -> dict[int, int]:
        """Multiset of 1-based cell ``idx`` as {symbol: count}, symbols 1-based."""
        vec = self._cells[tuple(i - 1 for i in idx)]
        return {l + 1: int(c) for l, c in enumerate(vec) if c}

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._groups == other._groups and bool(np.array_equal(self._cells, other._cells))

    def __hash__(self):
        return hash((self._groups, self._cells.tobytes()))


class OutlineRectangle(_Outline):
    """A u x v grid of symbol multisets amalgamating a latin square.

    The row, column and symbol groupings are ordered compositions of N; the
    templates used for two-part realizations need them out of sorted order.
    """

    _arity = 3

    def __init__(self, rows, cols, symbols, cells, *, check: bool = True):
        super().__init__((rows, cols, symbols), cells, check=check)

    @property
    def rows(self):
        return self._groups[0]

    @property
    def cols(self):
        return self._groups[1]

    @property
    def symbols(self):
        return self._groups[2]

    def __repr__(self):
        return f"OutlineRectangle(rows={self.rows}, cols={self.cols}, symbols={self.symbols})"


class OutlineBox(_Outline):
    """A u x v x w array of symbol multisets amalgamating a latin cube."""

    _arity = 4

    def __init__(self, rows, cols, files, symbols, cells, *, check: bool = True):
        super().__init__((rows, cols, files, symbols), cells, check=check)

    @property
    def rows(self):
        return self._groups[0]

    @property
    def cols(self):
        return self._groups[1]

    @property
    def files(self):
        return self._groups[2]

    @property
    def symbols(self):
        return self._groups[3]

    def __repr__(self):
        return (f"OutlineBox(rows={self.rows}, cols={self.cols}, "
                f"files={self.files}, symbols={self.symbols})")


def outline_from_entries(groups, entries, *, check: bool = True):
    """Build an outline from a fully expanded array of amalgamated symbols.

    ``entries`` has one position per original row/column(/file) and holds the
    amalgamated symbol there; positions are grouped by ``groups[:-1]``.
    Handy for writing outlines down the way they are usually drawn.
    """
    arr = np.asarray(entries, dtype=np.int64)
    groups = [tuple(g) for g in groups]
    t = len(groups[-1])
    labels = [np.repeat(np.arange(len(g)), g) for g in groups[:-1]]
    shape = tuple(len(g) for g in groups[:-1]) + (t,)
    counts = np.zeros(shape, dtype=np.int64)
    idx = np.meshgrid(*labels, indexing="ij")
    np.add.at(counts, tuple(i.ravel() for i in idx) + (arr.ravel() - 1,), 1)
    cls = OutlineRectangle if len(groups) == 3 else OutlineBox
    return cls(*groups, counts, check=check)
