from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthofq import gf, linalg
from orthofq.errors import DimensionOutOfRange, FieldMismatch, ShapeMismatch, Singular
from orthofq.linalg import Matrix, Vector

FIELDS = [gf.make_field(*pk) for pk in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]]


def leibniz_det(fld, m: Matrix) -> int:
    """Determinant straight from the permutation expansion."""
    n = m.rows
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = 1
        for i in range(n):
            term = fld.mul(term, m[i, perm[i]])
        total = fld.add(total, fld.neg(term) if inversions % 2 else term)
    return total


@st.composite
def square_matrices(draw, max_n=4):
    fld = draw(st.sampled_from(FIELDS))
    n = draw(st.integers(1, max_n))
    entries = draw(st.lists(st.integers(0, fld.q - 1), min_size=n * n, max_size=n * n))
    return Matrix(fld, n, n, tuple(entries))


@settings(max_examples=150, deadline=None)
@given(square_matrices())
def test_determinant_matches_leibniz(m):
    assert linalg.determinant(m) == leibniz_det(m.field, m)


@settings(max_examples=100, deadline=None)
@given(square_matrices(), st.data())
def test_determinant_multiplicative(a, data):
    entries = data.draw(st.lists(st.integers(0, a.field.q - 1), min_size=a.rows**2, max_size=a.rows**2))
    b = Matrix(a.field, a.rows, a.rows, tuple(entries))
    f = a.field
    assert linalg.determinant(a @ b) == f.mul(linalg.determinant(a), linalg.determinant(b))


@settings(max_examples=100, deadline=None)
@given(square_matrices())
def test_inverse_or_singular(m):
    if linalg.determinant(m) == 0:
        with pytest.raises(Singular):
            linalg.inverse(m)
        assert linalg.rank(m) < m.rows
        assert linalg.kernel_basis(m)
    else:
        inv = linalg.inverse(m)
        assert m @ inv == linalg.identity(m.field, m.rows)
        assert inv @ m == linalg.identity(m.field, m.rows)


@settings(max_examples=100, deadline=None)
@given(square_matrices())
def test_rank_nullity_and_kernel(m):
    ker = linalg.kernel_basis(m)
    assert linalg.rank(m) + len(ker) == m.cols
    for v in ker:
        assert (m @ v).is_zero()


@settings(max_examples=100, deadline=None)
@given(square_matrices(), st.data())
def test_solve(m, data):
    x = Vector(m.field, tuple(data.draw(st.lists(st.integers(0, m.field.q - 1), min_size=m.cols, max_size=m.cols))))
    b = m @ x
    sol = linalg.solve(m, b)
    assert sol is not None and m @ sol == b


def test_rref_pivot_rule_and_kernel_normalization():
    f = gf.make_field(3)
    rows = [[0, 2, 1, 0], [0, 1, 2, 1], [0, 0, 0, 0]]
    red, pivots = linalg.rref(f, rows)
    assert pivots == [1, 3]
    assert red[0] == [0, 1, 2, 0] and red[1] == [0, 0, 0, 1]
    ker = linalg.kernel_rows(f, rows, 4)
    # free columns 0 and 2, each set to 1
    assert ker == [[1, 0, 0, 0], [0, 1, 1, 0]]


def test_inconsistent_system():
    f = gf.make_field(2)
    m = Matrix.from_rows(f, [[1, 1], [1, 1]])
    assert linalg.solve(m, Vector(f, (0, 1))) is None


def test_shape_and_field_errors():
    f2, f3 = gf.make_field(2), gf.make_field(3)
    with pytest.raises(ShapeMismatch):
        Matrix.from_rows(f2, [[1, 0], [1]])
    with pytest.raises(ShapeMismatch):
        linalg.matmul(linalg.identity(f2, 2), linalg.identity(f2, 3))
    with pytest.raises(FieldMismatch):
        linalg.matmul(linalg.identity(f2, 2), linalg.identity(f3, 2))
    with pytest.raises(DimensionOutOfRange):
        Vector(f2, (0,) * 13)
    with pytest.raises(ValueError):
        Matrix.from_rows(f2, [[2]])


def test_gl_order_by_counting():
    # |GL(2, q)| = (q^2 - 1)(q^2 - q)
    for fld in FIELDS[:4]:
        q = fld.q
        count = sum(
            linalg.determinant(Matrix(fld, 2, 2, e)) != 0 for e in itertools.product(range(q), repeat=4)
        )
        assert count == (q * q - 1) * (q * q - q)


def test_transpose_and_json():
    f = gf.make_field(5)
    m = Matrix.from_rows(f, [[1, 2, 3], [4, 0, 1]])
    assert linalg.transpose(m).to_json() == [[1, 4], [2, 0], [3, 1]]
    assert Matrix.from_columns(f, m.columns()) == m
    rng = random.Random(3)
    a = Matrix(f, 3, 3, tuple(rng.randrange(5) for _ in range(9)))
    b = Matrix(f, 3, 3, tuple(rng.randrange(5) for _ in range(9)))
    assert linalg.transpose(a @ b) == linalg.transpose(b) @ linalg.transpose(a)
