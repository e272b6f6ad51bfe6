import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adjoint_cohomology.errors import ComplexMismatch
from adjoint_cohomology.linalg import (
    RationalSparseMatrix,
    RationalVector,
    h1_dimension,
    nullity,
    nullspace_basis,
    rank,
)

from oracles import dense_rank

M = RationalSparseMatrix.from_dense


def identity(n):
    return M([[int(i == j) for j in range(n)] for i in range(n)])


def test_rank_examples():
    assert rank(RationalSparseMatrix(3, 4)) == 0
    assert rank(identity(5)) == 5
    assert rank(M([[1, 2], [2, 4]])) == 1


def test_nullity_examples():
    assert nullity(RationalSparseMatrix(0, 4)) == 4
    assert nullity(identity(3)) == 0
    assert nullity(M([[2]])) == 0


def test_nullspace_examples():
    assert nullspace_basis(identity(3)) == []
    [v] = nullspace_basis(M([[1, 1]]))
    assert v[0] == -v[1] != 0
    assert len(nullspace_basis(M([[0, 0]]))) == 2


def test_zero_entries_not_stored():
    m = RationalSparseMatrix(2, 2, {(0, 0): 0, (1, 1): Fraction(1, 2)})
    assert m.entries == {(1, 1): Fraction(1, 2)}
    with pytest.raises(IndexError):
        RationalSparseMatrix(1, 1, {(1, 0): 1})
    assert RationalVector(3, {0: 0, 2: 5}).entries == {2: 5}


def test_matmul_and_apply():
    a = M([[1, 2], [0, 1]])
    b = M([[1, -2], [0, 1]])
    assert (a @ b) == identity(2)
    assert a.apply(RationalVector(2, {1: 1})) == RationalVector(2, {0: 2, 1: 1})


def test_h1_dimension_examples():
    # Z: one loop, no cells
    assert h1_dimension(RationalSparseMatrix(1, 1), RationalSparseMatrix(0, 1)) == 1
    # Z/2 class {x}
    assert h1_dimension(RationalSparseMatrix(1, 1), M([[2]])) == 0
    # Z^2 identity class
    assert h1_dimension(RationalSparseMatrix(2, 1), M([[0, 0]])) == 2


def test_h1_dimension_mismatch():
    with pytest.raises(ComplexMismatch):
        h1_dimension(RationalSparseMatrix(2, 1), M([[0, 0, 0]]))
    with pytest.raises(ComplexMismatch):
        h1_dimension(M([[-1, 1]]), M([[1]]))


def random_matrix(rng, rows, cols, density=0.5, low_rank=False):
    if low_rank:
        k = rng.randint(0, min(rows, cols))
        a = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(rows)]
        b = [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(k)]
        return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(cols)] for i in range(rows)]
    return [[rng.randint(-5, 5) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


dense = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 8).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=200)
@given(dense)
def test_rank_matches_dense_oracle(rows):
    m = M(rows)
    r = rank(m)
    assert r == dense_rank(rows)
    assert r <= min(m.rows, m.cols)
    assert nullity(m) + r == m.cols
    assert rank(m.transpose()) == r


@settings(max_examples=200)
@given(dense)
def test_nullspace_vectors_are_exact(rows):
    m = M(rows)
    basis = nullspace_basis(m)
    assert len(basis) == nullity(m)
    for v in basis:
        assert m.apply(v).entries == {}
    if basis:
        assert rank(RationalSparseMatrix.from_rows([v.entries for v in basis], m.cols)) == len(basis)


def test_random_low_rank_against_oracle():
    rng = random.Random(7)
    for _ in range(100):
        rows = random_matrix(rng, rng.randint(1, 15), rng.randint(1, 15), low_rank=True)
        assert rank(M(rows)) == dense_rank(rows)


def test_rational_entries():
    rows = [[Fraction(1, 3), Fraction(2, 7)], [Fraction(2, 3), Fraction(4, 7)]]
    assert rank(M(rows)) == 1
