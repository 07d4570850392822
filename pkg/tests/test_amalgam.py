import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latinreal import (
    DomainError,
    OutlineRectangle,
    build_outline_ab2,
    build_outline_abn,
    build_outline_diagonal,
    is_latin,
    realize_outline_rectangle,
    reduce,
    validate_outline,
    verify_realization,
    verify_top_structure,
)
from latinreal.amalgam import OutlineTemplateParams
from latinreal.core import outline_from_entries
from latinreal.flow import FlowProblem, decompose_regular

from conftest import random_latin_square
from fixtures import AB2_3_2, OUTLINE_SQUARE, OUTLINE_SQUARE_GROUPS, REDUCTION, REDUCTION_GROUPS


def test_ab2_cells():
    o = build_outline_ab2(3, 2)
    assert o.cell(1, 1) == {1: 2, 2: 2}
    assert o.cell(1, 3) == {3: 4}
    assert o.cell(2, 2) == {2: 1}
    assert validate_outline(o) is None
    assert o.order == 7
    assert build_outline_ab2(4, 3).cell(4, 4) == {1: 9}


def test_ab2_matches_figure():
    assert build_outline_ab2(3, 2) == outline_from_entries([(2, 1, 2, 2)] * 3, AB2_3_2)


@pytest.mark.parametrize("a, b", [(2, 2), (4, 2), (1, 2)])
def test_ab2_range(a, b):
    with pytest.raises(DomainError):
        build_outline_ab2(a, b)


def test_abn_cells():
    o = build_outline_abn(5, 2, 4)
    k = 3
    # D occupies the bottom-right quadrant
    assert o.cell(k + 1, k + 3) == {3: 2, 4: 2}
    # B occupies the top-right quadrant
    assert o.cell(3, k + 1) == {5: 2}
    assert validate_outline(o) is None
    assert o.order == 5 + 3 * 2


def test_abn_with_three_parts_is_ab2():
    for b in range(2, 6):
        for a in range(b + 1, 2 * b):
            assert build_outline_abn(a, b, 3) == build_outline_ab2(a, b)


def test_template_params():
    prm = OutlineTemplateParams(5, 2, 4)
    assert (prm.c, prm.d) == (2, 2)
    assert prm.c + prm.d == prm.b ** 2
    assert prm.in_gap
    with pytest.raises(DomainError):
        build_outline_abn(4, 2, 4)


def _admissible():
    for b in range(1, 5):
        for n in range(3, 8):
            for a in range((n - 2) * b + 1, (n - 1) * b):
                yield a, b, n


def test_templates_valid_sweep():
    count = 0
    for a, b, n in _admissible():
        assert validate_outline(build_outline_abn(a, b, n)) is None
        count += 1
    assert count > 0


@pytest.mark.parametrize("a, b, n", [(3, 2, 3), (5, 3, 3), (7, 4, 3), (5, 2, 4), (11, 3, 5), (14, 3, 6)])
def test_realized_templates_have_top_structure(a, b, n):
    o = build_outline_abn(a, b, n)
    sq = realize_outline_rectangle(o)
    assert reduce(sq, o.groupings) == o
    assert verify_top_structure(sq, (a,) + (b,) * (n - 1)) is None


def test_realize_reduction_figure():
    o = outline_from_entries(REDUCTION_GROUPS, REDUCTION)
    sq = realize_outline_rectangle(o)
    assert is_latin(sq) is None
    assert reduce(sq, REDUCTION_GROUPS) == o


def test_realize_outline_square_figure():
    o = outline_from_entries(OUTLINE_SQUARE_GROUPS, OUTLINE_SQUARE)
    assert reduce(realize_outline_rectangle(o), OUTLINE_SQUARE_GROUPS) == o


def test_realize_singletons_returns_square(rng):
    sq = random_latin_square(7, rng)
    o = reduce(sq, [(1,) * 7] * 3)
    assert realize_outline_rectangle(o) == sq


def test_realize_rejects_invalid():
    cells = np.array([[[1, 0], [1, 0]], [[0, 1], [0, 1]]])
    with pytest.raises(DomainError):
        realize_outline_rectangle(OutlineRectangle((1, 1), (1, 1), (1, 1), cells, check=False))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(0, 2 ** 32 - 1), st.data())
def test_round_trip_random(n, seed, data):
    sq = random_latin_square(n, np.random.default_rng(seed))
    groups = []
    for _ in range(3):
        cuts = sorted(data.draw(st.sets(st.integers(1, n - 1)))) if n > 1 else []
        edges = [0] + cuts + [n]
        groups.append([y - x for x, y in zip(edges, edges[1:])])
    o = reduce(sq, groups)
    assert reduce(realize_outline_rectangle(o), groups) == o


def test_diagonal_outline_examples():
    o = build_outline_diagonal((1, 1, 1))
    assert o is not None
    # forced: each off-diagonal cell holds the third symbol
    assert o.cell(1, 2) == {3: 1} and o.cell(2, 1) == {3: 1}
    sq = realize_outline_rectangle(o)
    assert verify_realization(sq, (1, 1, 1)) is None

    o = build_outline_diagonal((2, 1, 1, 1))
    sq = realize_outline_rectangle(o)
    assert verify_realization(sq, (2, 1, 1, 1)) is None
    assert reduce(sq, [(2, 1, 1, 1)] * 3) == o

    assert build_outline_diagonal((1, 1)) is None


def test_diagonal_outline_uses_exact_fallback():
    # the transportation heuristic stalls here; the exact fill does not
    p = (3, 2, 2, 2, 1)
    assert build_outline_diagonal(p, exact_fallback=False) is None
    o = build_outline_diagonal(p)
    assert verify_realization(realize_outline_rectangle(o), p) is None


def test_flow_problem():
    x = FlowProblem([[2, 1], [0, 2]], [2, 2], [1, 3]).solve()
    assert x.sum(axis=1).tolist() == [2, 2] and x.sum(axis=0).tolist() == [1, 3]
    assert (x <= np.array([[2, 1], [0, 2]])).all()
    assert FlowProblem([[1, 0], [0, 1]], [2, 0], [1, 1]).solve() is None


def test_decompose_regular():
    adj = [[0, 1], [1, 2], [2, 0]]
    ms = decompose_regular(adj, 3, 2)
    assert len(ms) == 2
    for m in ms:
        assert sorted(m) == [0, 1, 2]
    assert {(u, v) for m in ms for u, v in enumerate(m)} == {(u, v) for u, a in enumerate(adj) for v in a}
