"""Integral bipartite flows and regular-graph matching decomposition.

Both routines break ties by lowest index so their outputs are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np


class _Dinic:
    def __init__(self, n):
        self.n = n
        self.head = [[] for _ in range(n)]
        # edge arrays: to, cap, rev-index
        self.to = []
        self.cap = []

    def add_edge(self, u, v, c):
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        return len(self.to) - 2

    def _bfs(self, s, t):
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.head[u]:
                if self.cap[e] > 0 and level[self.to[e]] < 0:
                    level[self.to[e]] = level[u] + 1
                    q.append(self.to[e])
        return level if level[t] >= 0 else None

    def _dfs(self, u, t, pushed, level, it):
        if u == t:
            return pushed
        edges = self.head[u]
        while it[u] < len(edges):
            e = edges[it[u]]
            v = self.to[e]
            if self.cap[e] > 0 and level[v] == level[u] + 1:
                got = self._dfs(v, t, min(pushed, self.cap[e]), level, it)
                if got:
                    self.cap[e] -= got
                    self.cap[e ^ 1] += got
                    return got
            it[u] += 1
        return 0

    def max_flow(self, s, t):
        total = 0
        while True:
            level = self._bfs(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                f = self._dfs(s, t, float("inf"), level, it)
                if not f:
                    break
                total += f


@dataclass
class FlowProblem:
    """Pick ``x[i, j] <= capacity[i, j]`` with exact row and column sums.

    Rows and columns are the two sides of a bipartite multigraph; the
    capacity is the edge multiplicity and the sums are exact degree demands.
    """

    capacity: np.ndarray
    row_demand: np.ndarray
    col_demand: np.ndarray

    def __post_init__(self):
        self.capacity = np.asarray(self.capacity, dtype=np.int64)
        self.row_demand = np.asarray(self.row_demand, dtype=np.int64)
        self.col_demand = np.asarray(self.col_demand, dtype=np.int64)
        if self.capacity.shape != (len(self.row_demand), len(self.col_demand)):
            raise ValueError("capacity shape does not match the demand vectors")
        if (self.capacity < 0).any() or (self.row_demand < 0).any() or (self.col_demand < 0).any():
            raise ValueError("multiplicities and demands must be non-negative")

    def solve(self) -> np.ndarray | None:
        """An integral solution, or None if the demands cannot be met."""
        total = int(self.row_demand.sum())
        if total != int(self.col_demand.sum()):
            return None
        u, v = self.capacity.shape
        src, snk = u + v, u + v + 1
        g = _Dinic(u + v + 2)
        for i in range(u):
            if self.row_demand[i]:
                g.add_edge(src, i, int(self.row_demand[i]))
        edges = {}
        for i in range(u):
            for j in range(v):
                c = int(self.capacity[i, j])
                if c:
                    edges[i, j] = g.add_edge(i, u + j, c)
        for j in range(v):
            if self.col_demand[j]:
                g.add_edge(u + j, snk, int(self.col_demand[j]))
        if g.max_flow(src, snk) != total:
            return None
        x = np.zeros((u, v), dtype=np.int64)
        for (i, j), e in edges.items():
            x[i, j] = g.cap[e ^ 1]
        return x


def perfect_matching(adj: list[list[int]], n_right: int) -> list[int] | None:
    """Kuhn's augmenting-path matching; returns match_of_left or None."""
    match_right = [-1] * n_right
    match_left = [-1] * len(adj)

    def augment(u, seen):
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] < 0 or augment(match_right[v], seen):
                    match_right[v] = u
                    match_left[u] = v
                    return True
        return False

    # greedy start keeps the augmenting phase short
    for u in range(len(adj)):
        for v in adj[u]:
            if match_right[v] < 0:
                match_right[v] = u
                match_left[u] = v
                break
    for u in range(len(adj)):
        if match_left[u] < 0 and not augment(u, [False] * n_right):
            return None
    return match_left


def decompose_regular(adj: list[list[int]], n_right: int, degree: int) -> list[list[int]]:
    """Split a ``degree``-regular bipartite graph into perfect matchings."""
    adj = [sorted(a) for a in adj]
    out = []
    for _ in range(degree):
        m = perfect_matching(adj, n_right)
        if m is None:
            raise ValueError("graph is not regular bipartite; no perfect matching")
        out.append(m)
        for u, v in enumerate(m):
            adj[u].remove(v)
    return out
