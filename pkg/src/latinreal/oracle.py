"""Exhaustive search for m-realizations at small orders.

The search is exact cover (Algorithm X over dicts of sets): one constraint per
cell and one per (line, symbol).  Cells of block i may only take symbols of
S_i.  With ``normalize`` on, every axis line through the first cell of each
block is fixed to ascending symbols.  That loses nothing: permuting positions
within S_i on each axis and symbols within S_i maps any realization to one of
this form, and different blocks use disjoint index sets.

Column choice is minimum remaining candidates with ties to the lowest column
id, and rows are tried in ascending order, so node counts are reproducible.
"""

from __future__ import annotations

import enum
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import DomainError, LatinHypercube, Partition, as_partition, block_intervals
from .verify import verify_realization

DEFAULT_BUDGET = 2_000_000
WORKERS_ENV = "LATINREAL_ORACLE_WORKERS"


class Status(str, enum.Enum):
    FOUND = "Found"
    EXHAUSTED_NONE = "ExhaustedNone"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass(frozen=True)
class SearchOutcome:
    status: Status
    witness: LatinHypercube | None
    nodes: int
    budget: int

    @property
    def found(self):
        return self.status is Status.FOUND

    def to_dict(self):
        return {"status": self.status.value, "nodes": self.nodes, "budget": self.budget,
                "witness": None if self.witness is None else list(self.witness.entries)}


class _OutOfBudget(Exception):
    pass


class _Problem:
    """Exact-cover matrix for an m-realization of ``p``."""

    def __init__(self, p: Partition, m: int, normalize: bool):
        n = p.order
        self.n, self.m = n, m
        cells = n ** m
        self.cells = cells
        coords = np.indices((n,) * m).reshape(m, -1).T
        labels = block_intervals(p).labels()
        starts = block_intervals(p).starts
        # (axis, other coords) -> line id
        strides = [n ** k for k in range(m - 1)][::-1]

        def line_id(c, axis):
            rest = [c[k] for k in range(m) if k != axis]
            return axis * n ** (m - 1) + sum(r * s for r, s in zip(rest, strides))

        self.rows = {}
        self.forced = []
        for cid, c in enumerate(coords):
            lab = labels[c]
            if (lab == lab[0]).all():
                i = int(lab[0])
                s = starts[i]
                syms = range(s, s + p.parts[i])
                off = c - s
                if normalize and np.count_nonzero(off) <= 1:
                    self.forced.append(cid * n + s + int(off.sum()))
            else:
                syms = range(n)
            lines = [line_id(c, a) for a in range(m)]
            for sym in syms:
                self.rows[cid * n + sym] = [cid] + [cells + ln * n + sym for ln in lines]
        self.cols = {}
        for r, cs in self.rows.items():
            for c in cs:
                self.cols.setdefault(c, set()).add(r)
        for c in range(cells + m * n ** (m - 1) * n):
            self.cols.setdefault(c, set())

    def select(self, r):
        removed = []
        for j in self.rows[r]:
            for i in self.cols[j]:
                for k in self.rows[i]:
                    if k != j:
                        self.cols[k].discard(i)
            removed.append(self.cols.pop(j))
        return removed

    def deselect(self, r, removed):
        for j in reversed(self.rows[r]):
            self.cols[j] = removed.pop()
            for i in self.cols[j]:
                for k in self.rows[i]:
                    if k != j:
                        self.cols[k].add(i)

    def prefill(self):
        """Apply forced rows; False if they clash."""
        for r in self.forced:
            if any(j not in self.cols or r not in self.cols[j] for j in self.rows[r]):
                return False
            self.select(r)
        return True

    def choose(self):
        return min(self.cols, key=lambda c: (len(self.cols[c]), c))

    def witness(self, chosen):
        flat = np.zeros(self.cells, dtype=np.int64)
        for r in list(self.forced) + list(chosen):
            flat[r // self.n] = r % self.n + 1
        return LatinHypercube(flat.reshape((self.n,) * self.m))


class _Search:
    def __init__(self, problem: _Problem, budget: int):
        self.pb = problem
        self.budget = budget
        self.nodes = 0
        self.chosen = []

    def run(self):
        if not self.pb.cols:
            return True
        col = self.pb.choose()
        for r in sorted(self.pb.cols[col]):
            if self.try_row(r):
                return True
        return False

    def try_row(self, r):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        self.chosen.append(r)
        removed = self.pb.select(r)
        if self.run():
            return True
        self.pb.deselect(r, removed)
        self.chosen.pop()
        return False


def _setup(p, m, normalize):
    pb = _Problem(p, m, normalize)
    ok = pb.prefill()
    return pb, ok


def _branch(args):
    """Search one top-level branch; returns (state, nodes, entries)."""
    p, m, normalize, budget, row = args
    pb, _ = _setup(p, m, normalize)
    s = _Search(pb, budget)
    try:
        hit = s.try_row(row)
    except _OutOfBudget:
        return "budget", s.nodes, None
    if hit:
        return "found", s.nodes, pb.witness(s.chosen).entries
    return "none", s.nodes, None


def _default_workers():
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def search_realization(p, m: int, budget: int = DEFAULT_BUDGET, *, normalize: bool = True,
                       workers: int | None = None) -> SearchOutcome:
    """Search for an m-realization of ``p`` within ``budget`` search nodes.

    ``ExhaustedNone`` is a proof of non-existence.  With ``workers > 1`` the
    top-level branches run in separate processes; the outcome and node count
    match the sequential run.
    """
    p = as_partition(p)
    if m < 2:
        raise DomainError(f"dimension must be at least 2, got {m}")
    if budget < 0:
        raise DomainError("budget must be non-negative")
    workers = _default_workers() if workers is None else max(1, workers)
    n = p.order
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n ** m + 100))
    pb, ok = _setup(p, m, normalize)
    if not ok:
        return SearchOutcome(Status.EXHAUSTED_NONE, None, 0, budget)
    if not pb.cols:
        return _finish(p, pb.witness([]), 0, budget)
    col = pb.choose()
    branches = sorted(pb.cols[col])
    if workers == 1 or len(branches) < 2:
        s = _Search(pb, budget)
        try:
            for r in branches:
                if s.try_row(r):
                    return _finish(p, pb.witness(s.chosen), s.nodes, budget)
        except _OutOfBudget:
            return SearchOutcome(Status.BUDGET_EXCEEDED, None, budget, budget)
        return SearchOutcome(Status.EXHAUSTED_NONE, None, s.nodes, budget)
    jobs = [(p, m, normalize, budget, r) for r in branches]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        results = list(ex.map(_branch, jobs))
    total = 0
    for state, nodes, entries in results:
        total += nodes
        if state == "budget" or total > budget:
            return SearchOutcome(Status.BUDGET_EXCEEDED, None, budget, budget)
        if state == "found":
            h = LatinHypercube(np.array(entries).reshape((n,) * m))
            return _finish(p, h, total, budget)
    return SearchOutcome(Status.EXHAUSTED_NONE, None, total, budget)


def _finish(p, h, nodes, budget):
    report = verify_realization(h, p)
    if report is not None:
        raise AssertionError(f"oracle produced an invalid witness: {report}")
    return SearchOutcome(Status.FOUND, h, nodes, budget)
