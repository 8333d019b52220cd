"""Exact matrix queries: rank, kernel, inverses, row spaces."""

from fractions import Fraction

import pytest

from galois_loci.cyclotomic import Cyc, zeta
from galois_loci.linalg import Matrix, kernel_basis, row_space_equal

ZERO, ONE = Cyc.of(0), Cyc.of(1)


def test_kernel_basis_examples():
    assert kernel_basis(Matrix.identity(3)) == []
    assert len(kernel_basis(Matrix([[0, 0, 0], [0, 0, 0]]))) == 3
    assert kernel_basis(Matrix([[1, 0, 0], [0, 0, 1]])) == [(ZERO, ONE, ZERO)]


def test_rank_and_det():
    assert Matrix([[1, 2], [2, 4]]).rank() == 1
    assert Matrix([[1, 2], [3, 4]]).det() == -2
    assert Matrix([[zeta(4), 0], [0, 1]]).det() == zeta(4)
    with pytest.raises(ValueError):
        Matrix([[1, 2, 3]]).det()


def test_inverse_and_solve():
    a = Matrix([[1, 2], [3, 4]])
    assert a @ a.inverse() == Matrix.identity(2)
    assert a.solve([5, 11]) == (ONE, Cyc.of(2))
    assert Matrix([[1, 0], [1, 0]]).solve([1, 2]) is None
    with pytest.raises(ValueError):
        Matrix([[1, 1], [1, 1]]).inverse()


def test_solve_over_cyclotomic_field():
    i = zeta(4)
    m = Matrix([[i, 1], [1, i]])
    x = m.solve([1, 0])
    assert x is not None
    assert m @ Matrix([[x[0]], [x[1]]]) == Matrix([[1], [0]])


def test_rref_pivots():
    red, pivots = Matrix([[0, 1, 2], [0, 2, 4], [1, 0, 0]]).rref()
    assert pivots == (0, 1)
    assert red.row(0) == (ONE, ZERO, ZERO)


def test_row_space_equal():
    a = Matrix([[1, 0, 1], [0, 1, 1]])
    b = Matrix([[1, 1, 2], [1, -1, 0]])
    c = Matrix([[1, 0, 0], [0, 1, 0]])
    assert row_space_equal(a, b)
    assert not row_space_equal(a, c)


def test_fraction_entries_kept_exact():
    m = Matrix([[Fraction(1, 3), Fraction(1, 6)], [Fraction(1, 2), 1]])
    inv = m.inverse()
    assert (m @ inv) == Matrix.identity(2)
