import random

import pytest

from mplverify import MaxPlusMatrix
from mplverify.modelio import random_irreducible_mpl, random_mpl


@pytest.fixture
def railway() -> MaxPlusMatrix:
    """The two-station railway system: x(k+1) = [[2,5],[3,3]] (x(k))."""
    return MaxPlusMatrix.from_rows([[2, 5], [3, 3]])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260824)


def random_regular(rng, n, lo=-5, hi=9, density=0.6) -> MaxPlusMatrix:
    """Random regular matrix with a mix of finite and -inf entries."""
    rows = []
    for _ in range(n):
        row = [rng.randint(lo, hi) if rng.random() < density else None for _ in range(n)]
        if all(v is None for v in row):
            row[rng.randrange(n)] = rng.randint(lo, hi)
        rows.append(row)
    return MaxPlusMatrix.from_rows(rows)
