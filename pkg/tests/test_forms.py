from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_witt_index
from orthofq import forms, gf, linalg
from orthofq.errors import Degenerate, EvenCharacteristic, FormMismatch, NotAlternating, Singular, SingularForm
from orthofq.forms import BilinearForm, QuadraticForm, TypeTag
from orthofq.gf import SquareClass
from orthofq.linalg import Matrix, Vector

F2, F3, F4, F5 = (gf.make_field(2), gf.make_field(3), gf.make_field(2, 2), gf.make_field(5))


def vec(fld, *xs):
    return Vector(fld, tuple(xs))


# -- evaluation ---------------------------------------------------------------------

def test_eval_bilinear_examples():
    f = BilinearForm.from_rows(F3, [[1, 2], [2, 1]])
    assert forms.eval_bilinear(f, vec(F3, 1, 1), vec(F3, 1, 0)).index == 0
    assert forms.eval_bilinear(f, vec(F3, 0, 0), vec(F3, 2, 1)).index == 0
    ident = BilinearForm.diagonal(F3, [1, 1])
    assert forms.eval_bilinear(ident, vec(F3, 1, 0), vec(F3, 1, 0)).index == 1


def test_eval_quadratic_examples():
    xy = QuadraticForm.from_rows(F2, [[0, 1], [0, 0]])
    assert forms.eval_quadratic(xy, vec(F2, 1, 1)).index == 1
    assert forms.eval_quadratic(xy, vec(F2, 0, 0)).index == 0


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([F2, F3, F4, F5]), st.integers(1, 4), st.data())
def test_quadratic_scaling_and_polarization(fld, n, data):
    rows = [[data.draw(st.integers(0, fld.q - 1)) if j >= i else 0 for j in range(n)] for i in range(n)]
    Q = QuadraticForm.from_rows(fld, rows)
    u = tuple(data.draw(st.integers(0, fld.q - 1)) for _ in range(n))
    v = tuple(data.draw(st.integers(0, fld.q - 1)) for _ in range(n))
    lam = data.draw(st.integers(0, fld.q - 1))
    assert Q.value(tuple(fld.mul(lam, x) for x in u)) == fld.mul(fld.mul(lam, lam), Q.value(u))
    s = tuple(fld.add(a, b) for a, b in zip(u, v))
    assert fld.sub(fld.sub(Q.value(s), Q.value(u)), Q.value(v)) == Q.pair(u, v)


# -- predicates, radicals, polar forms ------------------------------------------------

def test_predicates():
    p = forms.form_predicates(BilinearForm.diagonal(F3, [1, 1]))
    assert p.symmetric and not p.alternating and p.nonsingular
    alt = BilinearForm.from_rows(F3, [[0, 1], [2, 0]])
    p = forms.form_predicates(alt)
    assert p.antisymmetric and p.alternating
    # over GF(3) every antisymmetric form has zero diagonal, hence is alternating
    for entries in itertools.product(range(3), repeat=4):
        f = BilinearForm.from_rows(F3, [list(entries[:2]), list(entries[2:])])
        pr = forms.form_predicates(f)
        if pr.antisymmetric:
            assert pr.alternating


def test_radicals():
    assert forms.radical_bilinear(BilinearForm.diagonal(F3, [1, 2])) == []
    assert len(forms.radical_bilinear(BilinearForm.diagonal(F3, [0, 0]))) == 2
    # x^2 + yz over GF(2): rad(f_Q) = <e_1>, Q(e_1) = 1, so rad(Q) = 0
    Q = QuadraticForm.from_rows(F2, [[1, 0, 0], [0, 0, 1], [0, 0, 0]])
    assert [v.entries for v in forms.radical_bilinear(Q.polar)] == [(1, 0, 0)]
    assert forms.radical_quadratic(Q) == []
    zero = QuadraticForm.from_rows(F2, [[0, 0], [0, 0]])
    assert len(forms.radical_quadratic(zero)) == 2


def test_polar_and_half_form():
    assert forms.polar_form(QuadraticForm.diagonal(F3, [1])).gram.to_json() == [[2]]
    xy = QuadraticForm.from_rows(F2, [[0, 1], [0, 0]])
    g = forms.polar_form(xy)
    assert g.gram.to_json() == [[0, 1], [1, 0]] and forms.form_predicates(g).alternating
    f = BilinearForm.diagonal(F3, [2])
    Q = forms.quadratic_from_bilinear(f)
    assert Q.value((1,)) == 1
    assert forms.polar_form(Q) == f
    with pytest.raises(EvenCharacteristic):
        forms.quadratic_from_bilinear(BilinearForm.diagonal(F2, [1]))


# -- symplectic bases and diagonalization ----------------------------------------------

def test_symplectic_basis_normal_form():
    rng = random.Random(5)
    for fld in (F2, F3, F4, F5):
        std = BilinearForm(fld, 4, forms.symplectic_normal_gram(fld, 4))
        assert forms.symplectic_basis(std) == linalg.identity(fld, 4)
        for _ in range(5):
            c = forms.random_invertible(fld, 4, rng)
            f = forms.pullback(std, c)
            p = forms.symplectic_basis(f)
            assert forms.pullback(f, p).gram == forms.symplectic_normal_gram(fld, 4)
    with pytest.raises(NotAlternating):
        forms.symplectic_basis(BilinearForm.from_rows(F3, [[1, 1], [2, 0]]))


def test_diagonalize_examples():
    p, d = forms.diagonalize(BilinearForm.diagonal(F3, [1, 1]))
    assert d == [1, 1] and p == linalg.identity(F3, 2)
    p, d = forms.diagonalize(BilinearForm.diagonal(F3, [2, 2]))
    assert d == [1, 1]
    assert forms.pullback(BilinearForm.diagonal(F3, [2, 2]), p) == BilinearForm.diagonal(F3, [1, 1])
    _, d = forms.diagonalize(BilinearForm.diagonal(F3, [1, 2]))
    assert d == [1, 2] and F3.nonsquare == 2


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([F3, F5, gf.make_field(7), gf.make_field(3, 2)]), st.integers(1, 4), st.integers(0, 10**6))
def test_diagonalize_random(fld, n, seed):
    f = forms.random_symmetric_nonsingular(fld, n, random.Random(seed))
    p, d = forms.diagonalize(f)
    assert forms.pullback(f, p) == BilinearForm.diagonal(fld, d)
    assert d[:-1] == [1] * (n - 1) and d[-1] in (1, fld.nonsquare)


# -- isotropy, Witt index, classification ---------------------------------------------------

def test_isotropic_examples():
    assert forms.find_isotropic_vector(BilinearForm.diagonal(F5, [1, 1])).entries == (1, 2)
    assert forms.find_isotropic_vector(BilinearForm.diagonal(F3, [1, 1])) is None
    anis = QuadraticForm.from_rows(F2, [[1, 1], [0, 1]])
    assert forms.find_isotropic_vector(anis) is None


def test_witt_index_examples():
    assert forms.witt_index(forms.hyperbolic_quadratic(F2, 1)) == 1
    assert forms.witt_index(QuadraticForm.from_rows(F2, [[1, 1], [0, 1]])) == 0
    f = BilinearForm.diagonal(F3, [1, 1, 1, 1])
    assert forms.witt_index(f) == brute_witt_index(F3, 4, f.value, f.pair) == 2


@pytest.mark.parametrize("fld", [F2, F3, F4, F5])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_witt_index_against_brute_force(fld, n):
    rng = random.Random(fld.q * 10 + n)
    for _ in range(3):
        if fld.p == 2:
            form = forms.random_nondegenerate_quadratic(fld, n, rng)
            oracle = brute_witt_index(fld, n, form.value, form.pair)
        else:
            form = forms.random_symmetric_nonsingular(fld, n, rng)
            oracle = brute_witt_index(fld, n, form.value, form.pair)
        assert forms.witt_index(form) == oracle


def test_classify_examples():
    c = forms.classify(BilinearForm.diagonal(F3, [1, 1]))
    assert c.type_tag is TypeTag.MINUS and c.witt_index == 0 and c.disc_class is SquareClass.SQUARE
    assert forms.classify(BilinearForm.diagonal(F5, [1, 1])).type_tag is TypeTag.PLUS
    xy = forms.classify(QuadraticForm.from_rows(F2, [[0, 1], [0, 0]]))
    assert xy.to_json() == {"type": "plus", "witt": 1, "disc": None, "arf": 0}
    assert forms.classify(QuadraticForm.from_rows(F2, [[1, 1], [0, 1]])).arf_bit == 1


def test_classify_preconditions():
    with pytest.raises(Singular):
        forms.classify(BilinearForm.diagonal(F3, [1, 0]))
    with pytest.raises(Degenerate):
        forms.classify(QuadraticForm.from_rows(F2, [[1, 0], [0, 1]]))
    with pytest.raises(SingularForm):
        forms.classify(QuadraticForm.from_rows(F2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_arf_examples_and_basis_independence():
    assert forms.arf_invariant(QuadraticForm.from_rows(F2, [[0, 1], [0, 0]])) == 0
    assert forms.arf_invariant(QuadraticForm.from_rows(F2, [[1, 1], [0, 1]])) == 1
    rng = random.Random(11)
    for fld in (F2, F4, gf.make_field(2, 3)):
        for _ in range(5):
            Q = forms.random_nondegenerate_quadratic(fld, 4, rng)
            bits = {forms.arf_invariant(Q, forms.random_symplectic_basis(Q.polar, rng)) for _ in range(5)}
            assert bits == {forms.arf_invariant(Q)}


def test_equivalence_witness_examples():
    a = BilinearForm.diagonal(F3, [1, 1])
    assert forms.equivalence_witness(a, a) == linalg.identity(F3, 2)
    xy = QuadraticForm.from_rows(F2, [[0, 1], [0, 0]])
    anis = QuadraticForm.from_rows(F2, [[1, 1], [0, 1]])
    assert forms.equivalence_witness(xy, anis) is None
    b = BilinearForm.diagonal(F3, [2, 2])
    c = forms.equivalence_witness(b, a)
    assert c is not None and forms.pullback(a, c) == b
    with pytest.raises(FormMismatch):
        forms.equivalence_witness(a, BilinearForm.diagonal(F5, [1, 1]))


def test_witness_agrees_with_values_exhaustively():
    rng = random.Random(2)
    for fld, n in ((F3, 3), (F4, 2), (F5, 2), (F2, 4)):
        a = forms.random_nondegenerate_quadratic(fld, n, rng)
        b = forms.random_nondegenerate_quadratic(fld, n, rng)
        c = forms.equivalence_witness(a, b)
        if c is None:
            continue
        for v in itertools.product(range(fld.q), repeat=n):
            cv = (c @ Vector(fld, v)).entries
            assert a.value(v) == b.value(cv)


@pytest.mark.parametrize("fld", [F2, F3, F4, F5, gf.make_field(7), gf.make_field(2, 3)])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_standard_forms_have_requested_type(fld, n):
    tags = [TypeTag.ODD] if n % 2 else [TypeTag.PLUS, TypeTag.MINUS]
    for tag in tags:
        assert forms.classify(forms.standard_quadratic(fld, n, tag)).type_tag is tag


def test_normalizing_basis_gives_normal_form():
    rng = random.Random(4)
    for fld in (F2, F4):
        for tag in (TypeTag.PLUS, TypeTag.MINUS):
            target = forms.standard_quadratic(fld, 4, tag)
            for _ in range(5):
                Q = forms.pullback(target, forms.random_invertible(fld, 4, rng))
                p = forms.normalizing_basis(Q)
                normal = forms.pullback(Q, p)
                assert forms.classify(normal).type_tag is tag
                assert normal == forms.pullback(target, forms.normalizing_basis(target))
