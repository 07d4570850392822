"""Outline rectangles: templates, a diagonal-outline builder and realization.

Any valid outline rectangle is the amalgamation of some latin square.  The
realizer here finds one by splitting amalgamated rows one unit row at a time,
then columns, then separating each symbol class into individual symbols by
decomposing its regular row/column graph into perfect matchings.  Every step
is an integral transportation problem whose fractional solution is obvious
(divide the block evenly), so each step is feasible for a valid input.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .core import DomainError, LatinError, LatinHypercube, OutlineRectangle, as_partition
from .flow import FlowProblem, decompose_regular
from .verify import validate_outline

log = logging.getLogger(__name__)


class RealizationDefect(LatinError, RuntimeError):
    """A step that must succeed for a valid outline did not."""


@dataclass(frozen=True)
class OutlineTemplateParams:
    a: int
    b: int
    n: int

    def __post_init__(self):
        if not (self.a > self.b >= 1):
            raise DomainError(f"need a > b >= 1, got a={self.a}, b={self.b}")
        if self.n < 3:
            raise DomainError(f"need n >= 3, got n={self.n}")

    @property
    def c(self) -> int:
        return self.b * (self.a - (self.n - 2) * self.b)

    @property
    def d(self) -> int:
        return self.b * ((self.n - 1) * self.b - self.a)

    @property
    def in_gap(self) -> bool:
        """(n-2)b < a < (n-1)b, the range the template is built for."""
        return (self.n - 2) * self.b < self.a < (self.n - 1) * self.b


def build_outline_ab2(a: int, b: int) -> OutlineRectangle:
    """The 4 x 4 outline whose realizations lift to a cube realizing (a b^2).

    Groupings are (b, a-b, b, b) on rows, columns and symbols; symbols 1 and 2
    together become the block of order a.
    """
    if not (b < a < 2 * b):
        raise DomainError(f"need b < a < 2b, got a={a}, b={b}")
    e, f = a - b, 2 * b - a
    layout = [
        [{1: b * f, 2: b * e}, {1: b * e}, {3: b * b}, {4: b * b}],
        [{1: b * e}, {2: e * e}, {4: b * e}, {3: b * e}],
        [{4: b * b}, {3: b * e}, {1: b * b}, {2: b * e, 3: b * f}],
        [{3: b * b}, {4: b * e}, {2: b * e, 4: b * f}, {1: b * b}],
    ]
    cells = np.zeros((4, 4, 4), dtype=np.int64)
    for i, row in enumerate(layout):
        for j, cell in enumerate(row):
            for sym, k in cell.items():
                cells[i, j, sym - 1] += k
    g = (b, e, b, b)
    return OutlineRectangle(g, g, g, cells)


def build_outline_abn(a: int, b: int, n: int) -> OutlineRectangle:
    """The 2(n-1) x 2(n-1) outline for (a b^(n-1)) with (n-2)b < a < (n-1)b.

    The array splits into four (n-1) x (n-1) quadrants A (top left), B (top
    right), C (bottom left) and D (bottom right).  Residues mod n-1 are taken
    in 1..n-1.  With n = 3 this reproduces :func:`build_outline_ab2`.
    """
    prm = OutlineTemplateParams(a, b, n)
    if not prm.in_gap:
        raise DomainError(f"need (n-2)b < a < (n-1)b, got a={a}, b={b}, n={n}")
    k = n - 1
    c, d = prm.c, prm.d
    e = a - (n - 2) * b  # weight of the odd-sized group

    def res(x):
        return (x - 1) % k + 1

    cells = np.zeros((2 * k, 2 * k, 2 * k), dtype=np.int64)

    def put(i, j, sym, count):
        cells[i - 1, j - 1, sym - 1] += count

    for i in range(1, k + 1):
        for j in range(1, k + 1):
            # A: symbols 1..k, later merged into the order-a block
            if i == k and j == k:
                put(i, j, res(i + j), e * e)
            elif i == k or j == k:
                put(i, j, res(i + j), c)
            elif i + j > k:
                put(i, j, res(i + j), b * b)
            else:
                put(i, j, i + j, c)
                put(i, j, i + j - 1, d)
            # B: row k has the odd weight
            put(i, k + j, res(-i + j + 1) + k, c if i == k else b * b)
            # C: column k has the odd weight
            put(k + i, j, res(i + j) + k, c if j == k else b * b)
            # D
            if (-i + j) % k != (k - 1) % k:
                put(k + i, k + j, res(-i + j + 1), b * b)
            else:
                put(k + i, k + j, k, c)
                put(k + i, k + j, k + i, d)
    g = (b,) * (n - 2) + (e,) + (b,) * (n - 1)
    return OutlineRectangle(g, g, g, cells)


def _diagonal_transport(h, order):
    """Per-symbol transportation fill of the off-diagonal cells, or None."""
    n = len(h)
    hv = np.array(h, dtype=np.int64)
    cap = np.outer(hv, hv)
    np.fill_diagonal(cap, 0)
    cells = np.zeros((n, n, n), dtype=np.int64)
    for l in order:
        c = cap.copy()
        c[l, :] = 0
        c[:, l] = 0
        demand = hv * hv[l]
        demand[l] = 0
        x = FlowProblem(c, demand, demand).solve()
        if x is None:
            return None
        cells[:, :, l] += x
        cap -= x
    return cells


def _diagonal_milp(h):
    from scipy.optimize import Bounds, LinearConstraint, milp

    n = len(h)
    keys = [(i, j, l) for i in range(n) for j in range(n) for l in range(n)
            if i != j and l != i and l != j]
    if not keys:
        return None
    index = {k: t for t, k in enumerate(keys)}
    rows, rhs = [], []

    def constraint(members, value):
        row = np.zeros(len(keys))
        for k in members:
            row[index[k]] = 1
        rows.append(row)
        rhs.append(value)

    for i in range(n):
        for j in range(n):
            if i != j:
                constraint([k for k in keys if k[0] == i and k[1] == j], h[i] * h[j])
    for i in range(n):
        for l in range(n):
            if i != l:
                constraint([k for k in keys if k[0] == i and k[2] == l], h[i] * h[l])
                constraint([k for k in keys if k[1] == i and k[2] == l], h[i] * h[l])
    a = np.array(rows)
    b = np.array(rhs, dtype=float)
    ub = np.array([h[i] * h[j] for i, j, _ in keys], dtype=float)
    res = milp(np.zeros(len(keys)), constraints=LinearConstraint(a, b, b),
               integrality=np.ones(len(keys)), bounds=Bounds(0, ub))
    if res.x is None:
        return None
    cells = np.zeros((n, n, n), dtype=np.int64)
    for k, val in zip(keys, np.rint(res.x).astype(np.int64)):
        cells[k] = val
    return cells


def build_outline_diagonal(p, *, exact_fallback: bool = True) -> OutlineRectangle | None:
    """An outline with h_i^2 copies of symbol i in each diagonal cell (i, i).

    Off-diagonal cells are filled by per-symbol transportation problems,
    largest symbol first, retrying once with each other symbol moved to the
    front.  If that heuristic stalls, an exact integer program is tried.
    ``None`` means no fill was found; it is not a proof of non-existence when
    ``exact_fallback`` is off.
    """
    p = as_partition(p)
    h = list(p.parts)
    n = len(h)
    base = sorted(range(n), key=lambda l: (-h[l], l))
    orders = [base] + [[l] + [x for x in base if x != l] for l in base[1:]]
    cells = None
    for order in orders:
        cells = _diagonal_transport(h, order)
        if cells is not None:
            break
    if cells is None and exact_fallback:
        log.debug("transport heuristic stalled for %s; trying exact fill", p)
        cells = _diagonal_milp(h)
    if cells is None:
        return None
    for i in range(n):
        cells[i, i, i] = h[i] * h[i]
    o = OutlineRectangle(h, h, h, cells, check=False)
    if validate_outline(o) is not None:
        return None
    return o


def _split(block: np.ndarray, unit: np.ndarray, symbols: np.ndarray, times: int, what: str):
    """Peel ``times`` unit slices off ``block`` (shape: parts x symbols)."""
    rest = block.copy()
    out = []
    for _ in range(times):
        x = FlowProblem(rest, unit, symbols).solve()
        if x is None:
            log.error("%s split failed; remaining block:\n%s", what, rest)
            raise RealizationDefect(f"{what} split infeasible; the outline may be invalid")
        out.append(x)
        rest -= x
    return out


def realize_outline_rectangle(o: OutlineRectangle) -> LatinHypercube:
    """A latin square whose reduction modulo the outline's groupings is ``o``."""
    report = validate_outline(o)
    if report is not None:
        raise DomainError(f"not a valid outline rectangle: {report}")
    p, q, r = (np.array(g, dtype=np.int64) for g in o.groupings)
    n = o.order
    # rows: each unit row is a (col-block x symbol) count matrix
    unit_rows = []
    for i, pi in enumerate(p):
        unit_rows.extend(_split(o.cells[i], q, r, int(pi), f"row block {i + 1}"))
    unit_rows = np.array(unit_rows)  # N x v x t
    klass = np.empty((n, n), dtype=np.int64)
    col = 0
    ones = np.ones(n, dtype=np.int64)
    for j, qj in enumerate(q):
        for y in _split(unit_rows[:, j, :], ones, r, int(qj), f"column block {j + 1}"):
            klass[:, col] = y.argmax(axis=1)
            col += 1
    square = np.empty((n, n), dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(r)[:-1]])
    for l, rl in enumerate(r):
        adj = [list(np.flatnonzero(klass[row] == l)) for row in range(n)]
        for k, match in enumerate(decompose_regular(adj, n, int(rl))):
            for row, c in enumerate(match):
                square[row, c] = offsets[l] + k + 1
    return LatinHypercube(square)
