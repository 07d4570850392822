"""Necessary conditions and the Exists / NotExists / Unknown decision procedure.

A verdict never goes beyond proved results: NotExists needs a failed
necessary condition or an if-and-only-if theorem, Exists needs a theorem or a
verified construction, and everything else is Unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product

from .core import NoSuchObject, Partition, Unresolved, as_partition
from .rules import describe

WITNESS_LIMIT = 48  # largest order for which classify builds a witness


class Status(str, enum.Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Check:
    """Outcome of one necessary condition."""

    name: str
    status: str  # "pass", "fail" or "n/a"
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == "pass"

    @property
    def failed(self):
        return self.status == "fail"

    def __bool__(self):
        return not self.failed

    def to_dict(self):
        return {"name": self.name, "status": self.status, "detail": _jsonable(self.detail)}


@dataclass(frozen=True)
class Citation:
    rule: str
    params: dict
    direction: str  # "exists", "not-exists", "reduces-to", "evidence"

    @property
    def statement(self):
        return describe(self.rule)

    def to_dict(self):
        return {"rule": self.rule, "params": _jsonable(self.params),
                "direction": self.direction, "statement": self.statement}


@dataclass(frozen=True)
class Verdict:
    status: Status
    partition: Partition
    dimension: int
    chain: tuple[Citation, ...]
    witness: object = None  # a Built for Exists, a Check for NotExists

    @property
    def exists(self):
        return self.status is Status.EXISTS

    def to_dict(self):
        w = self.witness
        if w is not None and hasattr(w, "to_dict"):
            w = w.to_dict()
        return {"status": self.status.value, "partition": list(self.partition.parts),
                "dimension": self.dimension, "chain": [c.to_dict() for c in self.chain],
                "witness": _jsonable(w)}


def _jsonable(x):
    if isinstance(x, Partition):
        return list(x.parts)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


# ---- necessary conditions ------------------------------------------------

def check_condition1(p) -> Check:
    """Every part is at most N/2 (only for n >= 2)."""
    p = as_partition(p)
    if p.count < 2:
        return Check("condition-1", "pass", {"vacuous": True})
    n = p.order
    for i, h in enumerate(p.parts, 1):
        if 2 * h > n:
            return Check("condition-1", "fail", {"i": i, "h_i": h, "N": n})
    return Check("condition-1", "pass")


def _subset_sums(p: Partition):
    """Yield (D, s1, s2, s3) for one subset per multiplicity count vector."""
    groups = p.compressed()
    firsts, acc = [], 0
    for v, k in groups:
        firsts.append(acc)
        acc += k
    for counts in product(*(range(k + 1) for _, k in groups)):
        d = [firsts[g] + t + 1 for g, c in enumerate(counts) for t in range(c)]
        s1 = sum(c * v for c, (v, _) in zip(counts, groups))
        s2 = sum(c * v * v for c, (v, _) in zip(counts, groups))
        s3 = sum(c * v ** 3 for c, (v, _) in zip(counts, groups))
        yield tuple(d), s1, s2, s3


def condition2_sides(p, d) -> tuple[int, int]:
    """(lhs, rhs) of the cube subset inequality for 1-based index set ``d``."""
    p = as_partition(p)
    n = p.order
    hs = [p.parts[i - 1] for i in d]
    s1, s2, s3 = sum(hs), sum(h * h for h in hs), sum(h ** 3 for h in hs)
    lhs = n ** 3 - sum(h ** 3 for h in p.parts)
    return lhs, n * n * s1 + 3 * s2 * (n - s1) - s3


def check_condition2(p) -> Check:
    """The cube subset inequality, checked over all subsets up to symmetry.

    Both sides only depend on sums of h, h^2 and h^3 over D, so one subset per
    vector of counts taken from each distinct part value is enough.  The
    reported witness is the most violated subset.
    """
    p = as_partition(p)
    n = p.order
    lhs = n ** 3 - sum(h ** 3 for h in p.parts)
    worst = None
    for d, s1, s2, s3 in _subset_sums(p):
        rhs = n * n * s1 + 3 * s2 * (n - s1) - s3
        if lhs < rhs and (worst is None or rhs - lhs > worst[2] - lhs):
            worst = (d, lhs, rhs)
    if worst is None:
        return Check("condition-2", "pass")
    d, l, r = worst
    return Check("condition-2", "fail", {"D": list(d), "lhs": l, "rhs": r})


def check_square_conditions(p) -> Check:
    """The two square conditions: h_1 <= h_3 + ... + h_n, and the D inequality."""
    p = as_partition(p)
    h = p.parts
    if p.count >= 2 and h[0] > sum(h[2:]):
        return Check("square-condition-A", "fail", {"h_1": h[0], "tail_sum": sum(h[2:])})
    n = p.order
    lhs = n * n - sum(x * x for x in h)
    worst = None
    for d, s1, _, _ in _subset_sums(p):
        rhs = 3 * s1 * (n - s1)
        if lhs < rhs and (worst is None or rhs > worst[2]):
            worst = (d, lhs, rhs)
    if worst is not None:
        d, l, r = worst
        return Check("square-condition-B", "fail", {"D": list(d), "lhs": l, "rhs": r})
    return Check("square-conditions", "pass")


def halving_reduce(p) -> Partition:
    """Strip the largest part while it equals half the order."""
    p = as_partition(p)
    while p.count >= 2 and 2 * p.parts[0] == p.order:
        p = Partition(p.parts[1:])
    return p


def two_part_shape(p):
    """(a, u, b, n) for partitions a^u b^(n-u) with a > b, else None."""
    p = as_partition(p)
    c = p.compressed()
    if len(c) != 2:
        return None
    (a, u), (b, _) = c
    return a, u, b, p.count


def check_a2b_bound(p) -> Check:
    p = as_partition(p)
    shape = two_part_shape(p)
    if shape is None or shape[1] != 2 or shape[3] < 3:
        return Check("a2b-bound", "n/a")
    a, _, b, n = shape
    if a > 2 * (n - 2) * b:
        return Check("a2b-bound", "fail", {"a": a, "b": b, "n": n, "bound": 2 * (n - 2) * b})
    return Check("a2b-bound", "pass")


def cube_obstruction(p) -> tuple[Partition, list[Citation], Check | None]:
    """Halving-reduce ``p`` and run the cube conditions on the result."""
    p = as_partition(p)
    q = halving_reduce(p)
    chain = []
    if q != p:
        chain.append(Citation("halving", {"from": p, "to": q}, "reduces-to"))
    for check in (check_condition1, check_condition2, check_a2b_bound):
        c = check(q)
        if c.failed:
            chain.append(Citation(c.name, dict(c.detail, partition=q), "not-exists"))
            return q, chain, c
    return q, chain, None


# ---- square theorems -----------------------------------------------------

def square_theorem(p) -> tuple[bool, Citation] | None:
    """Settle square existence by an if-and-only-if theorem when one applies."""
    p = as_partition(p)
    h, n = p.parts, p.count
    if n == 1:
        return True, Citation("squares-small-n", {"n": 1}, "exists")
    if n == 2:
        return False, Citation("squares-small-n", {"n": 2}, "not-exists")
    if n == 3:
        ok = h[0] == h[2]
        return ok, Citation("squares-small-n", {"n": 3}, "exists" if ok else "not-exists")
    if n == 4:
        ok = h[0] == h[2] or (h[1] == h[3] and h[0] <= 2 * h[3])
        return ok, Citation("squares-small-n", {"n": 4}, "exists" if ok else "not-exists")
    if h[0] == h[-1]:
        return True, Citation("equal-parts", {"a": h[0], "n": n}, "exists")
    shape = two_part_shape(p)
    if shape is not None:
        a, u, b, n = shape
        ok = u >= 3 or a <= (n - 2) * b
        return ok, Citation("squares-two-orders", {"a": a, "b": b, "u": u, "n": n},
                            "exists" if ok else "not-exists")
    return None


def _witness(build, p, limit):
    if p.order > limit:
        return None
    try:
        return build(p)
    except (Unresolved, NoSuchObject):
        return None


def classify_square(p, *, witness: bool = True) -> Verdict:
    from .construct import build_square

    p = as_partition(p)
    limit = WITNESS_LIMIT if witness else -1
    thm = square_theorem(p)
    if thm is not None:
        ok, cite = thm
        if not ok:
            return Verdict(Status.NOT_EXISTS, p, 2, (cite,), cite)
        return Verdict(Status.EXISTS, p, 2, (cite,), _witness(build_square, p, limit))
    c = check_square_conditions(p)
    if c.failed:
        cite = Citation(c.name, dict(c.detail), "not-exists")
        return Verdict(Status.NOT_EXISTS, p, 2, (cite,), c)
    try:
        built = build_square(p)
    except (Unresolved, NoSuchObject):
        return Verdict(Status.UNKNOWN, p, 2, ())
    return Verdict(Status.EXISTS, p, 2, tuple(_trace_citations(built)), built)


def _trace_citations(built):
    return [Citation(s.rule, dict(s.params), "exists") for s in built.trace.steps]


def cube_theorem(q: Partition) -> Citation | None:
    """An existence theorem covering ``q``, assuming the conditions pass."""
    h, n = q.parts, q.count
    if n == 1:
        return Citation("single-part", {"N": q.order}, "exists")
    if h[0] == h[-1]:
        return Citation("equal-parts", {"a": h[0], "n": n}, "exists")
    shape = two_part_shape(q)
    if shape is not None:
        a, u, b, n = shape
        if u == 1:
            return Citation("abn-template", {"a": a, "b": b, "n": n}, "exists")
        if u == 2 and n == 4 and a <= 2 * b:
            return Citation("a2b2", {"a": a, "b": b}, "exists")
        if u == 2 and n == 3 and any(a * y == b * x for x, y in ((2, 1), (3, 2), (4, 3))):
            return Citation("asset-inflation", {"a": a, "b": b}, "exists")
    sq = square_theorem(q)
    if sq is not None and sq[0]:
        return Citation("cube-from-square", {"square": sq[1].rule}, "exists")
    return None


def classify_cube(p, *, witness: bool = True) -> Verdict:
    """Decide cube existence for ``p``; the status matches that of its halving reduction."""
    from .construct import construct_cube

    from .assets import realization_assets

    p = as_partition(p)
    limit = WITNESS_LIMIT if witness else -1
    for rec in realization_assets(3):
        if rec.partition == p:
            cite = Citation("asset", {"name": rec.name}, "exists")
            return Verdict(Status.EXISTS, p, 3, (cite,), _witness(construct_cube, p, limit))
    q, chain, bad = cube_obstruction(p)
    if bad is not None:
        return Verdict(Status.NOT_EXISTS, p, 3, tuple(chain), bad)
    cite = cube_theorem(q)
    if cite is not None:
        chain.append(cite)
        return Verdict(Status.EXISTS, p, 3, tuple(chain), _witness(construct_cube, p, limit))
    sq = classify_square(q, witness=False)
    if sq.exists:
        chain.extend(sq.chain)
        chain.append(Citation("cube-from-square", {}, "exists"))
        return Verdict(Status.EXISTS, p, 3, tuple(chain), _witness(construct_cube, p, limit))
    try:
        built = construct_cube(p)
    except (Unresolved, NoSuchObject):
        return Verdict(Status.UNKNOWN, p, 3, tuple(chain))
    chain.extend(_trace_citations(built))
    return Verdict(Status.EXISTS, p, 3, tuple(chain), built)
