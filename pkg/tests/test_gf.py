from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import smallest_irreducible_low_degree
from orthofq import gf
from orthofq.errors import CompositeP, DegreeOutOfRange, DivisionByZero, ReducibleModulus
from orthofq.gf import FieldElement, SquareClass

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2)]


@pytest.mark.parametrize("p,k,modulus", [
    (2, 2, (1, 1, 1)),
    (2, 3, (1, 1, 0, 1)),
    (3, 2, (1, 0, 1)),
    (5, 2, (2, 0, 1)),
    (3, 3, (1, 2, 0, 1)),
    (7, 2, (1, 0, 1)),
])
def test_canonical_modulus_frozen(p, k, modulus):
    assert gf.make_field(p, k).modulus == modulus
    assert smallest_irreducible_low_degree(p, k) == modulus


@pytest.mark.parametrize("p,k", SMALL)
def test_field_axioms_exhaustive(p, k):
    f = gf.make_field(p, k)
    q = f.q
    for a, b in itertools.product(range(q), repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.sub(f.add(a, b), b) == a
        if a and b:
            assert f.mul(a, b) != 0
    for a in range(1, q):
        assert f.mul(a, f.inv(a)) == 1
    for a, b, c in itertools.product(range(min(q, 9)), repeat=3):
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_rejects_bad_parameters():
    with pytest.raises(CompositeP):
        gf.make_field(6)
    with pytest.raises(DegreeOutOfRange):
        gf.make_field(2, 0)
    with pytest.raises(DegreeOutOfRange):
        gf.make_field(2, 30)
    with pytest.raises(ReducibleModulus):
        gf.field_from_descriptor({"p": 2, "k": 2, "modulus": [1, 0, 1]}, allow_custom_modulus=True)
    with pytest.raises(ReducibleModulus):
        gf.field_from_descriptor({"p": 3, "k": 2, "modulus": [2, 0, 1]})


def test_custom_modulus_opt_in():
    f = gf.field_from_descriptor({"p": 3, "k": 2, "modulus": [2, 1, 1]}, allow_custom_modulus=True)
    assert f.modulus == (2, 1, 1) and f.q == 9
    assert gf.field_from_descriptor({"p": 3, "k": 2}) is gf.make_field(3, 2)


def test_division_by_zero():
    f = gf.make_field(5)
    with pytest.raises(DivisionByZero):
        f.inv(0)
    with pytest.raises(ZeroDivisionError):
        gf.inv(FieldElement(f, 0))


@pytest.mark.parametrize("p,k", SMALL)
def test_square_classes(p, k):
    f = gf.make_field(p, k)
    squares = {f.mul(a, a) for a in range(1, f.q)}
    for a in range(f.q):
        cls = gf.square_class(FieldElement(f, a))
        if a == 0:
            assert cls is SquareClass.ZERO
        elif p == 2 or a in squares:
            assert cls is SquareClass.SQUARE
            r = f.sqrt(a)
            assert f.mul(r, r) == a and r <= f.neg(r)
        else:
            assert cls is SquareClass.NONSQUARE
    if p != 2:
        assert len(squares) == (f.q - 1) // 2
        assert f.nonsquare not in squares


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_artin_schreier(q):
    f = gf.make_field(2, q.bit_length() - 1)
    image = {f.add(f.mul(u, u), u) for u in range(q)}
    assert len(image) == q // 2
    for c in range(q):
        lam = gf.artin_schreier_solve(FieldElement(f, c))
        if c in image:
            assert f.add(f.mul(lam.index, lam.index), lam.index) == c
        else:
            assert lam is None
        assert gf.arf_residue(FieldElement(f, c)) == (0 if c in image else 1)


def test_arf_one_frozen():
    from orthofq.forms import arf_one

    # smallest index outside {u^2 + u}; 1 lies outside exactly for odd k (trace of 1 is k mod 2)
    for k, expected in ((1, 1), (2, 2), (3, 1), (4, 8)):
        f = gf.make_field(2, k)
        image = {f.add(f.mul(u, u), u) for u in range(f.q)}
        assert arf_one(f) == min(c for c in range(f.q) if c not in image) == expected


def test_descriptor_roundtrip():
    f = gf.make_field(2, 3)
    assert gf.field_from_descriptor(f.descriptor()) is f
    assert f.descriptor() == {"p": 2, "k": 3, "modulus": [1, 1, 0, 1]}


fields = st.sampled_from(SMALL).map(lambda pk: gf.make_field(*pk))


@settings(max_examples=60, deadline=None)
@given(fields, st.data())
def test_frobenius_is_additive(f, data):
    a = data.draw(st.integers(0, f.q - 1))
    b = data.draw(st.integers(0, f.q - 1))
    fa, fb = FieldElement(f, a), FieldElement(f, b)
    assert gf.power(fa + fb, f.p) == gf.power(fa, f.p) + gf.power(fb, f.p)


@settings(max_examples=60, deadline=None)
@given(fields, st.data())
def test_fermat(f, data):
    a = FieldElement(f, data.draw(st.integers(1, f.q - 1)))
    assert gf.power(a, f.q - 1) == FieldElement(f, 1)
    assert gf.inv(a) * a == FieldElement(f, 1)


@settings(max_examples=60, deadline=None)
@given(fields, st.data())
def test_square_class_multiplicative(f, data):
    a = FieldElement(f, data.draw(st.integers(1, f.q - 1)))
    b = FieldElement(f, data.draw(st.integers(1, f.q - 1)))
    assert gf.square_class(a * b) == gf.square_class(a) * gf.square_class(b)


def test_element_wire_form_is_canonical_index():
    f = gf.make_field(3, 2)
    for i in range(9):
        e = f.element(i)
        assert e.index == i and f.from_coeffs(f.coeffs(i)) == i
