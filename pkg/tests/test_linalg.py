"""
Tests for exact linear algebra on Scalar matrices.
"""

import pytest

from holomatch.linalg import (
    as_matrix,
    determinant,
    exact_rank,
    inverse_matrix,
    is_zero_matrix,
    kron_power,
    matmul,
    matrices_equal,
    right_inverse_matrix,
    rref,
)
from holomatch.scalar import I, ONE, ZERO, identity
from holomatch.types import RankError, ShapeError


def test_rank():
    assert exact_rank(as_matrix([[1, 2], [2, 4]])) == 1
    assert exact_rank(identity(3)) == 3
    assert exact_rank(as_matrix([[0, 0, 0], [0, 0, 0]])) == 0
    # second row is i times the first
    assert exact_rank(as_matrix([[ONE, I], [I, -1]])) == 1
    # wide and tall matrices eliminate along the short side
    wide = as_matrix([[1, 0, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
    assert exact_rank(wide) == 3
    assert exact_rank(wide.T.copy()) == 3


def test_determinant():
    assert determinant(as_matrix([[1, 2], [3, 4]])) == -2
    assert determinant(as_matrix([[0, 1], [1, 0]])) == -1
    assert determinant(as_matrix([[1, 2], [2, 4]])) == ZERO
    assert determinant(as_matrix([["r2", 0], [0, "r2"]])) == 2
    with pytest.raises(ShapeError):
        determinant(as_matrix([[1, 2]]))


def test_rref_pivots():
    reduced, pivots = rref(as_matrix([[0, 2, 4], [0, 1, 2], [1, 0, 1]]))
    assert pivots == [0, 1]
    assert matrices_equal(reduced, as_matrix([[1, 0, 1], [0, 1, 2], [0, 0, 0]]))


def test_inverse():
    m = as_matrix([[2, 1], [1, "1i"]])
    assert matrices_equal(matmul(m, inverse_matrix(m)), identity(2))
    with pytest.raises(RankError):
        inverse_matrix(as_matrix([[1, 1], [2, 2]]))


def test_right_inverse():
    m = as_matrix([[1, 0, 1, 0], [0, 1, 1, 1]])
    x = right_inverse_matrix(m)
    assert x.shape == (4, 2)
    assert matrices_equal(matmul(m, x), identity(2))
    with pytest.raises(RankError):
        right_inverse_matrix(as_matrix([[1, 1], [2, 2]]))


def test_kron_power():
    m = as_matrix([[1, 1], [1, -1]])
    assert matrices_equal(kron_power(m, 0), identity(1))
    k2 = kron_power(m, 2)
    assert k2.shape == (4, 4)
    assert k2[3, 3] == 1
    assert k2[1, 3] == -1
    assert k2[2, 1] == 1
    assert k2[1, 1] == -1


def test_shape_errors():
    with pytest.raises(ShapeError):
        as_matrix([[1, 2], [3]])
    with pytest.raises(ShapeError):
        matmul(identity(2), identity(3))


def test_zero_matrix():
    assert is_zero_matrix(as_matrix([[0, 0], [0, 0]]))
    assert not is_zero_matrix(identity(2))
