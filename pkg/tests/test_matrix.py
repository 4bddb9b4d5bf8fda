import pytest

from mrdcodes.gf import get_field
from mrdcodes.matrix import (MatrixGF, Subspace, all_subspaces,
                             gaussian_binomial, kernel_of_rows, parse_matrices)
from conftest import random_matrix, random_invertible


def test_identity_and_rank():
    I = MatrixGF.identity(2, 4)
    assert I.rank() == 4
    assert I.is_invertible()
    assert I.inverse() == I


def test_rank_nullity_examples():
    M = MatrixGF.from_rows(2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert M.rank() == 2
    assert M.kernel().dim == 1
    assert M.left_kernel().dim == 1


def test_inverse_roundtrip(rng):
    for q in (2, 3, 4, 9):
        A = random_invertible(rng, q, 3)
        assert A @ A.inverse() == MatrixGF.identity(q, 3)


def test_singular_inverse_raises():
    M = MatrixGF.from_rows(2, [[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        M.inverse()


def test_rref_idempotent(rng):
    for _ in range(20):
        M = random_matrix(rng, 3, 3, 4)
        R, pivots = M.rref()
        assert R.rref()[0] == R
        assert R.rank() == M.rank() == len(pivots)


def test_text_roundtrip(rng):
    M = random_matrix(rng, 3, 2, 5)
    assert MatrixGF.from_text(3, M.to_text()) == M
    with pytest.raises(ValueError):
        MatrixGF.from_text(2, "012\n000")


def test_parse_matrices():
    mats = parse_matrices(2, "10\n01\n\n11\n00\n")
    assert len(mats) == 2
    assert mats[0] == MatrixGF.identity(2, 2)


def test_gaussian_binomial():
    assert gaussian_binomial(4, 1, 2) == 15
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 3, 2) == 15
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_binomial(3, 0, 2) == 1
    assert gaussian_binomial(3, 3, 5) == 1


def test_subspace_operations():
    F = get_field(2, 1)
    U = Subspace.from_vectors(F, 4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    V = Subspace.from_vectors(F, 4, [(0, 1, 0, 0), (0, 0, 1, 0)])
    assert U.dim == 2 and V.dim == 2
    assert U.intersect(V).dim == 1
    assert U.sum_with(V).dim == 3
    assert U.contains((1, 1, 0, 0))
    assert not U.contains((0, 0, 1, 0))
    assert len(list(U.vectors())) == 4


def test_all_subspaces_count():
    assert len(all_subspaces(2, 4, 1)) == 15
    assert len(all_subspaces(2, 4, 2)) == 35
    assert len(all_subspaces(3, 3, 1)) == 13


def test_kernel_of_rows():
    F = get_field(2, 1)
    K = kernel_of_rows([(1, 1, 0), (0, 1, 1)], F)
    assert K.dim == 1
    assert K.contains((1, 1, 1))


def test_matrix_index_roundtrip(rng):
    M = random_matrix(rng, 3, 2, 2)
    assert MatrixGF.from_index(3, 2, 2, M.index()) == M
