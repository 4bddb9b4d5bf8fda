import random

import pytest

from mrdcodes.matrix import MatrixGF
from mrdcodes.codes import AdditiveCode


def random_matrix(rng: random.Random, q: int, m: int, n: int) -> MatrixGF:
    return MatrixGF.from_rows(
        q, [[rng.randrange(q) for _ in range(n)] for _ in range(m)])


def random_code(rng: random.Random, q: int, m: int, n: int, dim: int) -> AdditiveCode:
    while True:
        mats = [random_matrix(rng, q, m, n) for _ in range(dim)]
        if any(not M.is_zero() for M in mats):
            C = AdditiveCode.from_basis(mats)
            if C.dim == dim:
                return C


def random_invertible(rng: random.Random, q: int, n: int) -> MatrixGF:
    while True:
        A = random_matrix(rng, q, n, n)
        if A.is_invertible():
            return A


@pytest.fixture
def rng():
    return random.Random(20240824)
