import numpy as np
import pytest

from latinreal import LatinHypercube, cyclic_hypercube, diagonal_square


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def random_latin_square(n, rng):
    """A random isotope and conjugate of one of a few base squares."""
    bases = [cyclic_hypercube(n, 2).array]
    if n != 2:
        bases.append(diagonal_square(n).array)
    if n % 2 == 0 and n >= 4:
        half = cyclic_hypercube(n // 2, 2).array
        two = np.array([[0, 1], [1, 0]])
        bases.append(np.kron(two, np.ones_like(half)) * (n // 2) + np.tile(half, (2, 2)))
    base = bases[rng.integers(len(bases))]
    r, c, s = (rng.permutation(n) for _ in range(3))
    sq = s[base[np.ix_(r, c)] - 1]
    # conjugate: swap roles of rows, columns and symbols
    trip = np.array([(i, j, int(sq[i, j])) for i in range(n) for j in range(n)])
    trip = trip[:, rng.permutation(3)]
    out = np.zeros((n, n), dtype=np.int64)
    out[trip[:, 0], trip[:, 1]] = trip[:, 2] + 1
    return LatinHypercube(out)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
