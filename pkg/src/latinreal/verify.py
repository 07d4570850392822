"""Latin-property, realization and outline checks, plus amalgamation.

Checks return ``None`` when the property holds and a :class:`ViolationReport`
describing the first failure otherwise.  The ``iter_*`` generators yield every
violation for callers that want the full list.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .core import (
    DomainError,
    LatinHypercube,
    OutlineBox,
    OutlineRectangle,
    Partition,
    block_intervals,
    _sizes,
)


class Kind(str, enum.Enum):
    NOT_LATIN = "NotLatin"
    MISSING_SUBCUBE = "MissingSubcube"
    SYMBOL_LEAK = "SymbolLeak"
    BLOCK_MISMATCH = "BlockMismatch"
    OUTLINE_COUNT = "OutlineCount"


@dataclass(frozen=True)
class ViolationReport:
    kind: Kind
    coordinates: tuple = ()
    detail: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def to_dict(self):
        return {"kind": self.kind.value,
                "coordinates": [list(c) for c in self.coordinates],
                "detail": self.detail}

    def __str__(self):
        return f"{self.kind.value}: {self.detail}"


def _first(it):
    return next(iter(it), None)


def _one_based(idx):
    return tuple(int(i) + 1 for i in idx)


def iter_latin_violations(h: LatinHypercube) -> Iterator[ViolationReport]:
    a = h.array
    n = h.order
    for axis in range(h.dimension):
        # every line along `axis` must be a permutation of 1..n
        s = np.sort(a, axis=axis)
        ok = s == np.arange(1, n + 1).reshape([-1 if k == axis else 1 for k in range(a.ndim)])
        bad = np.argwhere(~ok.all(axis=axis))
        for rest in bad:
            rest = list(rest)
            line = [tuple(rest[:axis] + [x] + rest[axis:]) for x in range(n)]
            vals = [int(a[c]) for c in line]
            seen = {}
            coords = ()
            for c, v in zip(line, vals):
                if v in seen:
                    coords = (_one_based(seen[v]), _one_based(c))
                    break
                seen[v] = c
            yield ViolationReport(
                Kind.NOT_LATIN, coords,
                f"line along axis {axis + 1} through {coords[0] if coords else '?'} "
                f"repeats a symbol: {vals}")


def is_latin(h: LatinHypercube) -> ViolationReport | None:
    return _first(iter_latin_violations(h))


def _check_order(h: LatinHypercube, p: Partition):
    if h.order != p.order:
        raise DomainError(f"hypercube order {h.order} does not match partition order {p.order}")


def _symbol_range_mask(a: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """True where a is outside lo..hi."""
    return (a < lo) | (a > hi)


def iter_realization_violations(h: LatinHypercube, p: Partition) -> Iterator[ViolationReport]:
    _check_order(h, p)
    yield from iter_latin_violations(h)
    blocks = block_intervals(p)
    for i, (sl, iv) in enumerate(zip(blocks.slices, blocks.intervals)):
        sub = h.array[(sl,) * h.dimension]
        for off in np.argwhere(_symbol_range_mask(sub, iv.start, iv.stop - 1)):
            coord = tuple(int(o) + sl.start for o in off)
            yield ViolationReport(
                Kind.SYMBOL_LEAK, (_one_based(coord),),
                f"cell {_one_based(coord)} of block {i + 1} holds {int(h.array[coord])}, "
                f"outside {iv.start}..{iv.stop - 1}")


def verify_realization(h: LatinHypercube, p) -> ViolationReport | None:
    """Check ``h`` is a normal-form realization of ``p``.

    Block i occupies positions S_i on every axis and must use only the
    symbols S_i.  Together with the latin property this makes it a latin
    subhypercube, so the blocks are pairwise disjoint in every direction.
    """
    from .core import as_partition

    return _first(iter_realization_violations(h, as_partition(p)))


def iter_top_structure_violations(l: LatinHypercube, p: Partition) -> Iterator[ViolationReport]:
    if l.dimension != 2:
        raise DomainError("top structure is defined for squares only")
    _check_order(l, p)
    yield from iter_latin_violations(l)
    a = l.array
    blocks = block_intervals(p)
    for i, (sl, iv, h) in enumerate(zip(blocks.slices, blocks.intervals, blocks.sizes)):
        for off in np.argwhere(_symbol_range_mask(a[sl, sl], 1, h)):
            coord = (int(off[0]) + sl.start, int(off[1]) + sl.start)
            yield ViolationReport(
                Kind.BLOCK_MISMATCH, (_one_based(coord),),
                f"diagonal block {i + 1}: cell {_one_based(coord)} holds {int(a[coord])}, "
                f"outside 1..{h}")
        for off in np.argwhere(_symbol_range_mask(a[:h, sl], iv.start, iv.stop - 1)):
            coord = (int(off[0]), int(off[1]) + sl.start)
            yield ViolationReport(
                Kind.MISSING_SUBCUBE, (_one_based(coord),),
                f"top block {i + 1}: cell {_one_based(coord)} holds {int(a[coord])}, "
                f"outside {iv.start}..{iv.stop - 1}")


def verify_top_structure(l: LatinHypercube, p) -> ViolationReport | None:
    """Check the shape a square needs before lifting it to a cube.

    For every block i: the diagonal block S_i x S_i holds only symbols
    1..h_i, and the cells in the first h_i rows and the columns S_i hold only
    symbols of S_i.
    """
    from .core import as_partition

    return _first(iter_top_structure_violations(l, as_partition(p)))


def reduce(h: LatinHypercube, groupings) -> OutlineRectangle | OutlineBox:
    """Amalgamate ``h`` modulo one grouping per axis plus a symbol grouping.

    Groupings are ordered compositions of N.  Symbols in the k-th symbol
    group are all mapped to symbol k.
    """
    groupings = [_sizes(g, "grouping") for g in groupings]
    m = h.dimension
    if m not in (2, 3):
        raise DomainError(f"reduction is defined for squares and cubes, got dimension {m}")
    if len(groupings) != m + 1:
        raise DomainError(f"expected {m + 1} groupings for dimension {m}, got {len(groupings)}")
    for g in groupings:
        if sum(g) != h.order:
            raise DomainError(f"grouping {g} sums to {sum(g)}, expected {h.order}")
    labels = [np.repeat(np.arange(len(g)), g) for g in groupings]
    sym = labels[-1][h.array - 1]
    shape = tuple(len(g) for g in groupings)
    counts = np.zeros(shape, dtype=np.int64)
    grids = np.meshgrid(*labels[:-1], indexing="ij")
    np.add.at(counts, tuple(g.ravel() for g in grids) + (sym.ravel(),), 1)
    if m == 2:
        return OutlineRectangle(*groupings, counts, check=False)
    return OutlineBox(*groupings, counts, check=False)


def _count_violations(actual, expected, label, axes_names):
    for idx in np.argwhere(actual != expected):
        idx = tuple(int(i) for i in idx)
        where = ", ".join(f"{n}={i + 1}" for n, i in zip(axes_names, idx))
        yield ViolationReport(
            Kind.OUTLINE_COUNT, (_one_based(idx),),
            f"{label} ({where}): found {int(actual[idx])}, expected {int(expected[idx])}")


def iter_outline_violations(o) -> Iterator[ViolationReport]:
    c = o.cells
    n = o.order
    if isinstance(o, OutlineRectangle):
        p, q, r = (np.array(g) for g in o.groupings)
        yield from _count_violations(c.sum(axis=2), np.outer(p, q), "cell size", ("row", "col"))
        yield from _count_violations(c.sum(axis=1), np.outer(p, r), "symbol count in row",
                                     ("row", "symbol"))
        yield from _count_violations(c.sum(axis=0), np.outer(q, r), "symbol count in column",
                                     ("col", "symbol"))
    elif isinstance(o, OutlineBox):
        p, q, r, s = (np.array(g) for g in o.groupings)
        yield from _count_violations(c.sum(axis=(0, 1, 2)), n * n * s, "symbol total", ("symbol",))
        yield from _count_violations(c.sum(axis=3), np.einsum("i,j,k->ijk", p, q, r), "cell size",
                                     ("row", "col", "file"))
        yield from _count_violations(c.sum(axis=2), np.einsum("i,j,l->ijl", p, q, s),
                                     "symbol count in line (i,j,*)", ("row", "col", "symbol"))
        yield from _count_violations(c.sum(axis=1), np.einsum("i,k,l->ikl", p, r, s),
                                     "symbol count in line (i,*,k)", ("row", "file", "symbol"))
        yield from _count_violations(c.sum(axis=0), np.einsum("j,k,l->jkl", q, r, s),
                                     "symbol count in line (*,j,k)", ("col", "file", "symbol"))
    else:
        raise TypeError(f"not an outline: {type(o).__name__}")


def validate_outline(o) -> ViolationReport | None:
    return _first(iter_outline_violations(o))
