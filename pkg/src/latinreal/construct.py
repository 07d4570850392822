"""Constructions of squares, cubes and higher realizations.

:func:`construct_cube` tries a fixed list of rules in order and returns the
first verified result together with a :class:`ConstructionTrace`.  Rules may
recurse on smaller partitions; results are memoized per partition, so a
trace names every rule that contributed, outermost first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from functools import reduce as _fold

import numpy as np

from .amalgam import (
    build_outline_ab2,
    build_outline_abn,
    build_outline_diagonal,
    realize_outline_rectangle,
)
from .assets import load_asset, realization_assets
from .classify import (
    check_square_conditions,
    cube_obstruction,
    square_theorem,
    two_part_shape,
)
from .core import (
    DomainError,
    LatinHypercube,
    NoSuchObject,
    Partition,
    Unresolved,
    as_partition,
    block_intervals,
)
from .rules import describe
from .verify import is_latin, verify_realization, verify_top_structure

log = logging.getLogger(__name__)

ORACLE_ORDER_LIMIT = 7
ORACLE_BUDGET = 200_000


@dataclass(frozen=True)
class Step:
    rule: str
    partition: Partition
    params: dict = field(default_factory=dict, compare=True)
    depth: int = 0

    @property
    def anchor(self):
        return describe(self.rule)

    def to_dict(self):
        from .classify import _jsonable

        return {"rule": self.rule, "partition": list(self.partition.parts),
                "params": _jsonable(self.params), "depth": self.depth, "anchor": self.anchor}


@dataclass(frozen=True)
class ConstructionTrace:
    partition: Partition
    dimension: int
    steps: tuple[Step, ...]

    def rules(self):
        return [s.rule for s in self.steps]

    def to_dict(self):
        return {"partition": list(self.partition.parts), "dimension": self.dimension,
                "steps": [s.to_dict() for s in self.steps]}


@dataclass(frozen=True)
class Built:
    hypercube: LatinHypercube
    partition: Partition
    trace: ConstructionTrace

    def to_dict(self):
        return {"trace": self.trace.to_dict(), "order": self.hypercube.order,
                "dimension": self.hypercube.dimension}


# ---- basic constructions ------------------------------------------------

def cyclic_hypercube(n: int, m: int = 2) -> LatinHypercube:
    """Entry (sum of 0-based coordinates mod n) + 1."""
    if n < 1 or m < 1:
        raise DomainError("order and dimension must be positive")
    return LatinHypercube(np.indices((n,) * m).sum(axis=0) % n + 1)


def _require_latin(h, what="input"):
    report = is_latin(h)
    if report is not None:
        raise DomainError(f"{what} is not latin: {report}")


def square_to_cube(l: LatinHypercube) -> LatinHypercube:
    """C(r, c, l) = L(L(r, l), c)."""
    if l.dimension != 2:
        raise DomainError("square_to_cube needs a square")
    _require_latin(l)
    a = l.array
    return LatinHypercube(a[a - 1].transpose(0, 2, 1))


def inflate(h: LatinHypercube, t: LatinHypercube) -> LatinHypercube:
    """Replace each cell x of ``h`` by a copy of ``t`` on symbols (x-1)k + [k]."""
    if h.dimension != t.dimension:
        raise DomainError(f"dimension mismatch: {h.dimension} vs {t.dimension}")
    k = t.order
    m = h.dimension
    out = np.kron(h.array - 1, np.ones((k,) * m, dtype=np.int64)) * k + np.tile(t.array, (h.order,) * m)
    return LatinHypercube(out)


def diagonal_square(n: int) -> LatinHypercube:
    """An idempotent latin square: L(i, i) = i."""
    if n < 1:
        raise DomainError("order must be positive")
    if n == 2:
        raise NoSuchObject("no latin square of order 2 has a transversal on its diagonal")
    if n % 2:
        i, j = np.indices((n, n))
        return LatinHypercube((i + j) * ((n + 1) // 2) % n + 1)
    # even: prolong the odd idempotent square along the transversal (i, i+1)
    q = n - 1
    base = diagonal_square(q).array
    out = np.full((n, n), n, dtype=np.int64)
    out[:q, :q] = base
    for i in range(q):
        j = (i + 1) % q
        out[i, q] = base[i, j]
        out[q, j] = base[i, j]
        out[i, j] = n
    return LatinHypercube(out)


def canonicalize(h: LatinHypercube, sizes) -> tuple[LatinHypercube, Partition]:
    """Reorder diagonal blocks of sizes ``sizes`` into non-increasing order.

    The same position permutation is applied on every axis and to the symbols,
    so a block that used its own interval of symbols still does.
    """
    sizes = tuple(int(s) for s in sizes)
    starts = block_intervals(sizes).starts
    order = sorted(range(len(sizes)), key=lambda i: (-sizes[i], i))
    perm = np.concatenate([np.arange(starts[i], starts[i] + sizes[i]) for i in order])
    inv = np.argsort(perm)
    arr = h.array[np.ix_(*[perm] * h.dimension)]
    return LatinHypercube(inv[arr - 1] + 1), Partition(sizes)


def replace_block(h: LatinHypercube, p, block_index: int, sub: LatinHypercube,
                  sub_partition=None) -> tuple[LatinHypercube, Partition]:
    """Overwrite block ``block_index`` (1-based) of ``h`` with ``sub``.

    ``sub`` gets the block's symbol offset.  When ``sub_partition`` is given,
    ``sub`` must realize it and the block is refined into those parts.
    Returns the result in normal form together with its partition.
    """
    p = as_partition(p)
    blocks = block_intervals(p)
    if not 1 <= block_index <= len(blocks):
        raise DomainError(f"block index {block_index} out of range 1..{len(blocks)}")
    i = block_index - 1
    size = p.parts[i]
    if h.order != p.order:
        raise DomainError("hypercube order does not match the partition")
    if sub.order != size or sub.dimension != h.dimension:
        raise DomainError(f"block {block_index} has order {size} and dimension {h.dimension}; "
                          f"got order {sub.order}, dimension {sub.dimension}")
    sl = blocks.slices[i]
    region = h.array[(sl,) * h.dimension]
    if region.min() <= sl.start or region.max() > sl.stop:
        raise DomainError(f"block {block_index} is not closed on its symbols")
    _require_latin(sub, "replacement")
    if sub_partition is None:
        sub_sizes = (size,)
    else:
        sp = as_partition(sub_partition)
        report = verify_realization(sub, sp)
        if report is not None:
            raise DomainError(f"replacement does not realize {sp}: {report}")
        sub_sizes = sp.parts
    arr = h.array.copy()
    arr[(sl,) * h.dimension] = sub.array + sl.start
    sizes = p.parts[:i] + sub_sizes + p.parts[i + 1:]
    return canonicalize(LatinHypercube(arr), sizes)


def combine(f: LatinHypercube, g: LatinHypercube, p) -> LatinHypercube:
    """h(x_1..x_l) = f(g(x_1..x_k), x_(k+1)..x_l), of dimension m + k - 1."""
    p = as_partition(p)
    if f.order != g.order:
        raise DomainError(f"order mismatch: {f.order} vs {g.order}")
    for name, x in (("f", f), ("g", g)):
        report = verify_realization(x, p)
        if report is not None:
            raise DomainError(f"{name} is not a normal-form realization of {p}: {report}")
    return LatinHypercube(f.array[g.array - 1])


# ---- squares ---------------------------------------------------------------

def _square(p: Partition) -> tuple[LatinHypercube, str, dict]:
    thm = square_theorem(p)
    if thm is not None and not thm[0]:
        raise NoSuchObject(f"no latin square realizes {p}: {thm[1].statement}")
    c = check_square_conditions(p)
    if c.failed:
        raise NoSuchObject(f"no latin square realizes {p}: {describe(c.name)}")
    n = p.count
    if n == 1:
        return cyclic_hypercube(p.order, 2), "single-part", {}
    if p.parts[0] == p.parts[-1]:
        a = p.parts[0]
        return inflate(diagonal_square(n), cyclic_hypercube(a, 2)), "equal-parts", {"a": a, "n": n}
    for rec in realization_assets(2):
        if rec.partition == p:
            return rec.hypercube, "asset", {"name": rec.name}
    o = build_outline_diagonal(p)
    if o is not None:
        return realize_outline_rectangle(o), "square-from-outline", {}
    if p.order <= ORACLE_ORDER_LIMIT + 1:
        from .oracle import search_realization

        res = search_realization(p, 2, ORACLE_BUDGET)
        if res.found:
            return res.witness, "oracle", {"nodes": res.nodes}
    raise Unresolved(f"no implemented route builds a latin square realizing {p}")


def build_square(p) -> Built:
    p = as_partition(p)
    h, rule, params = _square(p)
    _check(h, p, rule)
    return Built(h, p, ConstructionTrace(p, 2, (Step(rule, p, params),)))


def construct_square(p) -> LatinHypercube:
    """A normal-form 2-realization of ``p``.

    Raises :class:`NoSuchObject` when a theorem excludes it and
    :class:`Unresolved` when no route applies.
    """
    return build_square(p).hypercube


def _check(h, p, rule):
    report = verify_realization(h, p)
    if report is not None:
        log.error("rule %s produced an invalid realization of %s: %s", rule, p, report)
        raise AssertionError(f"rule {rule} produced an invalid realization of {p}: {report}")


# ---- cubes -----------------------------------------------------------------

def _r_single(b, p):
    if p.count == 1:
        return cyclic_hypercube(p.order, 3), {}, []


def _r_asset(b, p):
    for rec in realization_assets(3):
        if rec.partition == p:
            return rec.hypercube, {"name": rec.name}, []


def _r_equal(b, p):
    a, n = p.parts[0], p.count
    if n < 2 or p.parts[-1] != a:
        return None
    t = cyclic_hypercube(a, 3)
    if n == 2:
        return inflate(load_asset("fig-1-1-cube").hypercube, t), {"a": a, "n": 2}, []
    sq = inflate(diagonal_square(n), cyclic_hypercube(a, 2))
    return square_to_cube(sq), {"a": a, "n": n}, []


def _r_halving(b, p):
    h1 = p.parts[0]
    if p.count < 2 or 2 * h1 != p.order:
        return None
    big = b.build(Partition((h1, h1)))
    tail = b.build(Partition(p.parts[1:]))
    if big is None or tail is None:
        return None
    out, _ = replace_block(big[0], (h1, h1), 2, tail[0], p.parts[1:])
    return out, {"h1": h1}, big[1] + tail[1]


def _template(p, o, params):
    sq = realize_outline_rectangle(o)
    report = verify_top_structure(sq, p)
    if report is not None:
        raise AssertionError(f"template square lacks the top structure for {p}: {report}")
    return square_to_cube(sq), params, []


def _r_ab2(b, p):
    s = two_part_shape(p)
    if s and s[1] == 1 and s[3] == 3 and s[2] < s[0] < 2 * s[2]:
        return _template(p, build_outline_ab2(s[0], s[2]), {"a": s[0], "b": s[2]})


def _r_abn(b, p):
    s = two_part_shape(p)
    if s and s[1] == 1 and s[3] >= 4:
        a, _, bb, n = s
        if (n - 2) * bb < a < (n - 1) * bb:
            return _template(p, build_outline_abn(a, bb, n), {"a": a, "b": bb, "n": n})


def _r_inflation(b, p):
    g = _fold(gcd, p.parts)
    for k in sorted((d for d in range(2, g + 1) if g % d == 0), reverse=True):
        base = Partition(tuple(h // k for h in p.parts))
        got = b.build(base)
        if got is not None:
            return inflate(got[0], cyclic_hypercube(k, 3)), {"k": k, "base": base}, got[1]


def _r_square(b, p):
    try:
        sq, rule, params = _square(p)
    except (NoSuchObject, Unresolved):
        return None
    return square_to_cube(sq), dict(params, square=rule), []


def _r_merge(b, p):
    for v, k in p.compressed():
        for j in range(k, 1, -1):
            rest = list(p.parts)
            for _ in range(j):
                rest.remove(v)
            merged = Partition(tuple(rest) + (j * v,))
            big = b.build(merged)
            if big is None:
                continue
            sub = b.build(Partition((v,) * j))
            if sub is None:
                continue
            idx = merged.parts.index(j * v) + 1
            out, _ = replace_block(big[0], merged, idx, sub[0], (v,) * j)
            return out, {"part": v, "count": j, "merged": merged}, big[1] + sub[1]


def _r_oracle(b, p):
    if p.order > ORACLE_ORDER_LIMIT:
        return None
    from .oracle import search_realization

    res = search_realization(p, 3, b.oracle_budget)
    if res.found:
        return res.witness, {"nodes": res.nodes}, []


CUBE_RULES = {
    "single-part": _r_single,
    "asset": _r_asset,
    "equal-parts": _r_equal,
    "halving": _r_halving,
    "ab2-template": _r_ab2,
    "abn-template": _r_abn,
    "inflation": _r_inflation,
    "square": _r_square,
    "merge-equal-parts": _r_merge,
    "oracle": _r_oracle,
}


class _CubeBuilder:
    def __init__(self, forced=None, oracle_budget=ORACLE_BUDGET):
        self.forced = forced
        self.oracle_budget = oracle_budget
        self.memo = {}

    def build(self, p: Partition):
        """(hypercube, steps) or None; steps are relative to depth 0."""
        if p in self.memo:
            return self.memo[p]
        result = None
        _, _, bad = cube_obstruction(p)
        if bad is None:
            names = [self.forced[p]] if self.forced and p in self.forced else list(CUBE_RULES)
            for name in names:
                got = CUBE_RULES[name](self, p)
                if got is None:
                    continue
                h, params, sub = got
                _check(h, p, name)
                steps = [Step(name, p, params, 0)]
                steps += [Step(s.rule, s.partition, s.params, s.depth + 1) for s in sub]
                result = (h, steps)
                break
        self.memo[p] = result
        return result


_DEFAULT_BUILDER = _CubeBuilder()


def construct_cube(p) -> Built:
    """A verified 3-realization of ``p`` with the rules that produced it.

    Raises :class:`NoSuchObject` when a necessary condition fails (after
    halving reduction) and :class:`Unresolved` when no rule succeeds.
    """
    p = as_partition(p)
    q, chain, bad = cube_obstruction(p)
    if bad is not None:
        raise NoSuchObject(f"no latin cube realizes {p}: {describe(bad.name)} ({bad.detail})")
    got = _DEFAULT_BUILDER.build(p)
    if got is None:
        raise Unresolved(f"no implemented rule builds a latin cube realizing {p}")
    h, steps = got
    return Built(h, p, ConstructionTrace(p, 3, tuple(steps)))


# ---- higher dimensions -------------------------------------------------------

def parity_hypercube(m: int) -> LatinHypercube:
    """Order 2: entry 1 iff an even number of coordinates are 2."""
    return LatinHypercube(np.indices((2,) * m).sum(axis=0) % 2 + 1)


def _fewest_coins(target, coins):
    """Shortest list of coins summing to target, or None."""
    best = {0: []}
    for t in range(1, target + 1):
        opts = [best[t - c] + [c] for c in coins if c <= t and best.get(t - c) is not None]
        best[t] = min(opts, key=lambda x: (len(x), x)) if opts else None
    return best[target]


def construct_mrp(p, m: int) -> Built:
    """An m-realization of ``p``.

    Besides squares and cubes, higher dimensions come from combining available
    realizations: dimensions d_1, ..., d_r combine to 1 + sum(d_j - 1).
    """
    p = as_partition(p)
    if m < 2:
        raise DomainError(f"dimension must be at least 2, got {m}")
    if m == 2:
        return build_square(p)
    if m == 3:
        return construct_cube(p)

    def done(h, steps):
        _check(h, p, steps[0].rule)
        return Built(h, p, ConstructionTrace(p, m, tuple(steps)))

    if p.count == 1:
        return done(cyclic_hypercube(p.order, m), [Step("single-part", p)])
    if p.parts == (1, 1):
        if m % 2 == 0:
            raise NoSuchObject(f"no {m}-realization of (1^2) exists for even m")
        return done(parity_hypercube(m), [Step("parity", p, {"m": m})])
    for rec in realization_assets(m):
        if rec.partition == p:
            return done(rec.hypercube, [Step("asset", p, {"name": rec.name})])
    bases = {}
    for d, fn in ((2, build_square), (3, construct_cube)):
        try:
            bases[d] = fn(p)
        except (NoSuchObject, Unresolved):
            pass
    for d in range(4, m):
        for rec in realization_assets(d):
            if rec.partition == p:
                bases[d] = Built(rec.hypercube, p,
                                 ConstructionTrace(p, d, (Step("asset", p, {"name": rec.name}),)))
    coins = _fewest_coins(m - 1, sorted(d - 1 for d in bases))
    if not coins:
        raise Unresolved(f"no implemented route reaches dimension {m} for {p}")
    dims = [c + 1 for c in coins]
    h = bases[dims[0]].hypercube
    sub = list(bases[dims[0]].trace.steps)
    for d in dims[1:]:
        h = combine(bases[d].hypercube, h, p)
        sub += list(bases[d].trace.steps)
    steps = [Step("combine", p, {"dimensions": dims})]
    steps += [Step(s.rule, s.partition, s.params, s.depth + 1) for s in sub]
    return done(h, steps)


def replay(trace: ConstructionTrace) -> Built:
    """Rebuild from a trace, forcing each recorded rule; must match exactly."""
    if trace.dimension == 3:
        forced = {}
        for s in trace.steps:
            forced.setdefault(s.partition, s.rule)
        got = _CubeBuilder(forced=forced).build(trace.partition)
        if got is None:
            raise Unresolved("trace no longer replays")
        built = Built(got[0], trace.partition, ConstructionTrace(trace.partition, 3, tuple(got[1])))
    else:
        built = construct_mrp(trace.partition, trace.dimension)
    if built.trace != trace:
        raise AssertionError("replay took a different rule chain")
    return built
