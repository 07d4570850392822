from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from latinreal import Partition, search_realization
from latinreal.classify import (
    Status,
    check_a2b_bound,
    check_condition1,
    check_condition2,
    check_square_conditions,
    classify_cube,
    classify_square,
    condition2_sides,
    halving_reduce,
)

from conftest import partitions


def naive_condition2(parts):
    n = sum(parts)
    lhs = n ** 3 - sum(h ** 3 for h in parts)
    idx = range(len(parts))
    for k in range(len(parts) + 1):
        for d in combinations(idx, k):
            hs = [parts[i] for i in d]
            s1, s2, s3 = sum(hs), sum(h * h for h in hs), sum(h ** 3 for h in hs)
            if lhs < n * n * s1 + 3 * s2 * (n - s1) - s3:
                return False
    return True


def naive_square_b(parts):
    n = sum(parts)
    lhs = n * n - sum(h * h for h in parts)
    for k in range(len(parts) + 1):
        for d in combinations(parts, k):
            if lhs < 3 * sum(d) * (n - sum(d)):
                return False
    return True


def test_condition2_fixture():
    assert condition2_sides((3, 3, 1), [1, 2]) == (288, 294)
    c = check_condition2((3, 3, 1))
    assert c.failed
    assert c.detail == {"D": [1, 2], "lhs": 288, "rhs": 294}
    assert not naive_condition2((3, 3, 1))


def test_condition1_fixture():
    c = check_condition1((10, 2) + (1,) * 7)
    assert c.failed and c.detail["i"] == 1
    assert check_condition1((5,)).passed
    assert check_condition1((2, 2)).passed


def test_halving_reduce():
    p = (19, 10, 2) + (1,) * 7
    assert check_condition1(p).passed and check_condition2(p).passed
    assert halving_reduce(p) == Partition((10, 2) + (1,) * 7)
    assert halving_reduce((4, 2, 1, 1)) == Partition((1,))
    assert halving_reduce((3, 2, 1)) == Partition((2, 1))
    assert halving_reduce((2, 2, 1)) == Partition((2, 2, 1))
    v = classify_cube(p)
    assert v.status is Status.NOT_EXISTS
    assert v.chain[0].rule == "halving"
    assert v.chain[-1].rule == "condition-1"


def test_a2b_bound_fixture():
    p = (43, 43, 7, 7, 7)
    assert check_condition1(p).passed and check_condition2(p).passed
    c = check_a2b_bound(p)
    assert c.failed and c.detail["bound"] == 42
    assert check_a2b_bound((42, 42, 7, 7, 7)).passed
    assert check_a2b_bound((3, 2, 1)).status == "n/a"
    assert classify_cube(p).status is Status.NOT_EXISTS


def test_square_conditions():
    assert check_square_conditions((3, 1, 1)).name == "square-condition-A"
    assert check_square_conditions((1, 1)).failed
    assert check_square_conditions((1,)).passed
    assert check_square_conditions((2, 2, 2)).passed


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=12))
def test_count_vector_matches_naive(parts):
    p = tuple(sorted(parts, reverse=True))
    assert check_condition2(p).passed == naive_condition2(p)
    b = check_square_conditions(p)
    if b.name != "square-condition-A":
        assert (b.name != "square-condition-B") == naive_square_b(p)


def test_classify_examples():
    assert classify_cube((1, 1)).status is Status.EXISTS
    assert classify_square((1, 1)).status is Status.NOT_EXISTS
    assert classify_cube((3, 3, 1)).status is Status.NOT_EXISTS
    assert classify_cube((4, 4, 1, 1)).status is not Status.NOT_EXISTS
    v = classify_cube((2, 2, 1))
    assert v.exists and v.witness is not None
    assert v.to_dict()["status"] == "Exists"


def test_classify_unknown_is_honest():
    v = classify_cube((4, 3, 2))
    assert v.status is Status.UNKNOWN
    assert v.witness is None


@pytest.mark.parametrize("n", range(2, 11))
def test_halving_invariance(n):
    for p in partitions(n):
        q = halving_reduce(p)
        if q != Partition(p):
            a = classify_cube(p, witness=False).status
            b = classify_cube(q, witness=False).status
            assert a == b, (p, q)


def test_exists_verdicts_carry_valid_witness():
    from latinreal import verify_realization

    for n in range(1, 9):
        for p in partitions(n):
            v = classify_cube(p)
            if v.exists:
                assert v.witness is not None
                assert verify_realization(v.witness.hypercube, p) is None


@pytest.mark.parametrize("m", [2, 3])
def test_sound_against_oracle(m):
    classify = classify_square if m == 2 else classify_cube
    for n in range(1, 7):
        for p in partitions(n):
            v = classify(p, witness=False)
            if v.status is Status.UNKNOWN:
                continue
            res = search_realization(p, m)
            assert res.status.value != "BudgetExceeded"
            assert res.found == v.exists, (p, m, v.status, res.status)
