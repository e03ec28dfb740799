"""The Clifford algebra cl(V, Q) over the standard basis of V.

Basis monomials are strictly increasing tuples of 0-based generator
indexes; ``()`` is the unit.  Products are normalized by the rewriting rules
e_i e_i = Q(e_i) and e_j e_i = -e_i e_j + f_Q(e_i, e_j) for i < j, which are
the defining relation v v = Q(v) 1 polarized on basis vectors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional

from .errors import FormMismatch, ShapeMismatch
from .forms import QuadraticForm
from .gf import FieldElement
from .linalg import Vector

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class CliffordElement:
    form: QuadraticForm
    terms: tuple[tuple[Monomial, int], ...]  # sorted, nonzero coefficients only

    @classmethod
    def from_dict(cls, form: QuadraticForm, coeffs: Mapping[Monomial, int]) -> "CliffordElement":
        for m in coeffs:
            if any(a >= b for a, b in zip(m, m[1:])) or any(not 0 <= i < form.n for i in m):
                raise ValueError(f"{m} is not a basis monomial for n={form.n}")
        return cls(form, tuple(sorted((m, c) for m, c in coeffs.items() if c)))

    @classmethod
    def scalar(cls, form: QuadraticForm, c: int) -> "CliffordElement":
        return cls.from_dict(form, {(): c})

    @property
    def coeffs(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def coefficient(self, m: Monomial) -> FieldElement:
        return FieldElement(self.form.field, self.coeffs.get(m, 0))

    def _same(self, other: "CliffordElement") -> None:
        if other.form != self.form:
            raise FormMismatch("Clifford elements belong to different algebras")

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._same(other)
        fld = self.form.field
        out = self.coeffs
        for m, c in other.terms:
            out[m] = fld.add(out.get(m, 0), c)
        return CliffordElement.from_dict(self.form, out)

    def scale(self, c: int) -> "CliffordElement":
        fld = self.form.field
        return CliffordElement.from_dict(self.form, {m: fld.mul(c, x) for m, x in self.terms})

    def __mul__(self, other: "CliffordElement") -> "CliffordElement":
        return clifford_mul(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)


@lru_cache(maxsize=None)
def _times_generator(form: QuadraticForm, m: Monomial, j: int) -> tuple[tuple[Monomial, int], ...]:
    """m * e_j rewritten in the monomial basis."""
    fld = form.field
    if not m or m[-1] < j:
        return ((m + (j,), 1),)
    if m[-1] == j:
        return ((m[:-1], form.upper[j, j]),)
    # m = prefix e_a with a > j:  e_a e_j = -e_j e_a + f_Q(e_a, e_j)
    prefix, a = m[:-1], m[-1]
    out: dict[Monomial, int] = {}
    minus_one = fld.neg(1)
    for t, c in _times_generator(form, prefix, j):
        # every generator in t is < a, so appending e_a keeps t increasing
        key = t + (a,)
        out[key] = fld.add(out.get(key, 0), fld.mul(minus_one, c))
    f_aj = form.polar.gram[a, j]
    if f_aj:
        out[prefix] = fld.add(out.get(prefix, 0), f_aj)
    return tuple((k, v) for k, v in out.items() if v)


@lru_cache(maxsize=None)
def _monomial_product(form: QuadraticForm, a: Monomial, b: Monomial) -> tuple[tuple[Monomial, int], ...]:
    fld = form.field
    current: dict[Monomial, int] = {a: 1}
    for j in b:
        nxt: dict[Monomial, int] = {}
        for m, c in current.items():
            for t, d in _times_generator(form, m, j):
                nxt[t] = fld.add(nxt.get(t, 0), fld.mul(c, d))
        current = {k: v for k, v in nxt.items() if v}
    return tuple(current.items())


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    a._same(b)
    fld = a.form.field
    out: dict[Monomial, int] = {}
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            c = fld.mul(ca, cb)
            for m, d in _monomial_product(a.form, ma, mb):
                out[m] = fld.add(out.get(m, 0), fld.mul(c, d))
    return CliffordElement.from_dict(a.form, out)


def embed_vector(Q: QuadraticForm, v: Vector) -> CliffordElement:
    """sum v_i e_i as a degree-one element."""
    if v.field != Q.field or len(v) != Q.n:
        raise ShapeMismatch(f"expected a length-{Q.n} vector over {Q.field!r}")
    return CliffordElement.from_dict(Q, {(i,): c for i, c in enumerate(v.entries)})


def monomial_basis(n: int) -> list[Monomial]:
    return [m for r in range(n + 1) for m in itertools.combinations(range(n), r)]


def algebra_dimension(Q: QuadraticForm) -> int:
    """2^n, after checking that all pairwise monomial products stay in the span of the basis."""
    basis = monomial_basis(Q.n)
    allowed = set(basis)
    for a in basis:
        for b in basis:
            if any(m not in allowed for m, _ in _monomial_product(Q, a, b)):
                raise AssertionError("monomial product left the basis")
    return len(basis)


def random_element(Q: QuadraticForm, rng: random.Random, terms: Optional[int] = None) -> CliffordElement:
    basis = monomial_basis(Q.n)
    chosen = basis if terms is None else rng.sample(basis, min(terms, len(basis)))
    return CliffordElement.from_dict(Q, {m: rng.randrange(Q.field.q) for m in chosen})
