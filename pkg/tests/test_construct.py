import numpy as np
import pytest

from latinreal import (
    DomainError,
    LatinHypercube,
    NoSuchObject,
    Partition,
    Unresolved,
    combine,
    construct_cube,
    construct_mrp,
    construct_square,
    cyclic_hypercube,
    diagonal_square,
    inflate,
    is_latin,
    load_asset,
    reduce,
    replace_block,
    replay,
    search_realization,
    square_to_cube,
    verify_realization,
)
from latinreal.construct import canonicalize, parity_hypercube

from conftest import partitions, random_latin_square


def test_square_to_cube_small():
    assert square_to_cube(LatinHypercube([[1]])).tolist() == [[[1]]]
    # C(r,c,l) = L(L(r,l),c) evaluated by hand for L = [[1,2],[2,1]]
    cube = square_to_cube(LatinHypercube([[1, 2], [2, 1]]))
    assert cube.tolist() == [[[1, 2], [2, 1]], [[2, 1], [1, 2]]]
    assert cube == load_asset("fig-1-1-cube").hypercube


def test_square_to_cube_formula(rng):
    sq = random_latin_square(6, rng)
    cube = square_to_cube(sq)
    a = sq.array
    for r, c, l in [(0, 0, 0), (1, 4, 2), (5, 3, 1)]:
        assert cube.array[r, c, l] == a[a[r, l] - 1, c]


@pytest.mark.parametrize("name, p", [
    ("square-3-2-2", (3, 2, 2)),
    ("square-4-3-3", (4, 3, 3)),
    ("square-5-3-3", (5, 3, 3)),
])
def test_square_to_cube_top_structure(name, p):
    assert verify_realization(square_to_cube(load_asset(name).hypercube), p) is None


def test_square_to_cube_rejects_non_latin():
    with pytest.raises(DomainError):
        square_to_cube(LatinHypercube([[1, 1], [2, 2]]))


def test_construction_one_on_random_squares(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 10))
        cube = square_to_cube(random_latin_square(n, rng))
        assert cube.order == n
        assert is_latin(cube) is None


def test_inflate_examples():
    t = cyclic_hypercube(3, 3)
    assert inflate(LatinHypercube([[[1]]]), t) == t
    c = inflate(load_asset("fig-1-1-cube").hypercube, cyclic_hypercube(3, 3))
    assert verify_realization(c, (3, 3)) is None
    c = inflate(load_asset("appendix-a1").hypercube, cyclic_hypercube(2, 3))
    assert verify_realization(c, (6, 6, 4)) is None
    with pytest.raises(DomainError):
        inflate(cyclic_hypercube(2, 2), cyclic_hypercube(2, 3))


@pytest.mark.parametrize("m, n, k", [(2, 3, 2), (3, 2, 3), (4, 2, 2)])
def test_inflate_reduces_to_base(m, n, k):
    h = cyclic_hypercube(n, m) if m != 3 else load_asset("fig-1-1-cube").hypercube
    big = inflate(h, cyclic_hypercube(k, m))
    assert big.order == n * k
    assert is_latin(big) is None
    if m in (2, 3):
        o = reduce(big, [(k,) * n] * (m + 1))
        assert (o.cells.argmax(axis=-1) + 1 == h.array).all()
        assert (o.cells.max(axis=-1) == k ** m).all()


def test_diagonal_square():
    assert diagonal_square(1).tolist() == [[1]]
    three = diagonal_square(3)
    assert three.tolist() == [[1, 3, 2], [3, 2, 1], [2, 1, 3]]
    for n in (4, 5, 6, 8, 10):
        d = diagonal_square(n)
        assert is_latin(d) is None
        assert [int(d.array[i, i]) for i in range(n)] == list(range(1, n + 1))
    with pytest.raises(NoSuchObject):
        diagonal_square(2)


def test_construct_square_examples():
    sq = construct_square((2, 2, 2))
    assert sq.order == 6 and verify_realization(sq, (2, 2, 2)) is None
    with pytest.raises(NoSuchObject):
        construct_square((3, 1, 1))
    sq = construct_square((2, 1, 1, 1))
    assert verify_realization(sq, (2, 1, 1, 1)) is None
    with pytest.raises(NoSuchObject):
        construct_square((1, 1))


def test_replace_block_examples():
    lc22 = construct_cube((2, 2)).hypercube
    out, p = replace_block(lc22, (2, 2), 2, load_asset("fig-1-1-cube").hypercube, (1, 1))
    assert p == Partition((2, 1, 1))
    assert verify_realization(out, p) is None
    assert search_realization((2, 1, 1), 3).found

    lc44 = construct_cube((4, 4)).hypercube
    out, p = replace_block(lc44, (4, 4), 1, lc22, (2, 2))
    assert p == Partition((4, 2, 2))
    assert verify_realization(out, p) is None

    same, p = replace_block(lc44, (4, 4), 2, LatinHypercube(lc44.array[4:, 4:, 4:] - 4))
    assert same == lc44 and p == Partition((4, 4))


def test_replace_block_errors():
    lc22 = construct_cube((2, 2)).hypercube
    with pytest.raises(DomainError):
        replace_block(lc22, (2, 2), 1, cyclic_hypercube(3, 3))
    with pytest.raises(DomainError):
        replace_block(lc22, (2, 2), 3, cyclic_hypercube(2, 3))
    with pytest.raises(DomainError):
        replace_block(cyclic_hypercube(4, 3), (2, 2), 1, cyclic_hypercube(2, 3))


def test_canonicalize_sorts_blocks():
    cube = construct_cube((2, 1, 1)).hypercube
    flipped, _ = canonicalize(cube, (2, 1, 1))
    assert flipped == cube
    small_first, p = canonicalize(LatinHypercube(cube.array), (2, 1, 1))
    assert p == Partition((2, 1, 1))


@pytest.mark.parametrize("p", ["2 2 1", "4 2 2", "5 3 3", "4 4 1 1", "3 3 2", "6 6 4", "7 4 4"])
def test_construct_cube_examples(p):
    built = construct_cube(p)
    assert verify_realization(built.hypercube, built.partition) is None
    assert built.trace.steps


def test_construct_cube_rule_chains():
    assert construct_cube((4, 2, 2)).trace.rules()[0] == "halving"
    assert construct_cube((5, 3, 3)).trace.rules() == ["ab2-template"]
    assert construct_cube((2, 2, 1)).trace.rules() == ["asset"]
    with pytest.raises(NoSuchObject):
        construct_cube((5, 2, 2))


def test_construct_cube_unknown():
    with pytest.raises(Unresolved):
        construct_cube((4, 3, 2))


@pytest.mark.parametrize("p", ["4 4 1 1", "2 2 1 1", "4 2 2", "6 6 4"])
def test_replay_reproduces(p):
    built = construct_cube(p)
    again = replay(built.trace)
    assert again.hypercube == built.hypercube
    assert again.trace == built.trace


def test_combine_examples():
    cube = load_asset("fig-1-1-cube").hypercube
    h = combine(cube, cube, (1, 1))
    assert h.dimension == 5
    idx = np.indices((2,) * 5)
    assert (h.array == np.where(idx.sum(axis=0) % 2 == 0, 1, 2)).all()

    ls = construct_square((1, 1, 1))
    lc = construct_cube((1, 1, 1)).hypercube
    four = combine(ls, lc, (1, 1, 1))
    assert four.dimension == 4 and verify_realization(four, (1, 1, 1)) is None

    one = LatinHypercube([[1]])
    assert combine(one, one, (1,)).tolist() == [[[1]]]


def test_combine_errors():
    with pytest.raises(DomainError):
        combine(cyclic_hypercube(2, 2), cyclic_hypercube(3, 3), (2,))
    with pytest.raises(DomainError):
        combine(cyclic_hypercube(3, 2), cyclic_hypercube(3, 3), (1, 1, 1))


def test_combine_associative_shape():
    p = (2, 2, 2)
    f = construct_square(p)
    g = construct_cube(p).hypercube
    g2 = construct_square(p)
    left = combine(f, combine(g, g2, p), p)
    right = combine(combine(f, g, p), g2, p)
    assert verify_realization(left, p) is None
    assert verify_realization(right, p) is None


def test_construct_mrp_examples():
    five = construct_mrp((1, 1), 5)
    assert five.hypercube == parity_hypercube(5)
    with pytest.raises(NoSuchObject):
        construct_mrp((1, 1), 4)
    with pytest.raises(Unresolved):
        construct_mrp((2, 2, 1), 4)
    a3 = construct_mrp((2, 2, 1, 1), 4)
    assert a3.trace.rules() == ["asset"]
    for m in (4, 5, 6):
        built = construct_mrp((2, 1, 1, 1), m)
        assert built.hypercube.dimension == m
        assert verify_realization(built.hypercube, (2, 1, 1, 1)) is None
    built = construct_mrp((2, 2, 1), 5)
    assert built.trace.rules()[0] == "combine"


def test_halving_strip():
    for n in range(2, 13, 2):
        for p in partitions(n):
            if 2 * p[0] != n:
                continue
            try:
                built = construct_cube(p)
            except (NoSuchObject, Unresolved):
                continue
            h1 = p[0]
            tail = built.hypercube.array[h1:, h1:, h1:]
            assert tail.min() > h1
            assert verify_realization(LatinHypercube(tail - h1), p[1:]) is None
