"""Bilinear and quadratic forms over GF(q) and their classification.

A bilinear form is stored as its Gram matrix.  A quadratic form is stored as
an upper-triangular matrix ``U`` with ``Q(v) = v^T U v``; in characteristic 2
the Gram matrix of the polar form loses the diagonal, so the upper-triangular
representation is the only one that works in every characteristic.

All searches are deterministic: vectors are scanned in lexicographic order
of their coordinate indexes (first coordinate most significant), visiting
only projective representatives whose leading nonzero coordinate is 1.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence, Union

from . import linalg
from .errors import (
    Degenerate,
    EvenCharacteristic,
    FormMismatch,
    NotAlternating,
    NotSymmetric,
    OddCharacteristic,
    OddDimension,
    ShapeMismatch,
    Singular,
    SingularForm,
    UnsupportedCombination,
)
from .gf import FieldElement, FieldSpec, SquareClass, arf_residue, square_class
from .linalg import Matrix, Vector

Vec = tuple[int, ...]


@dataclass(frozen=True)
class BilinearForm:
    field: FieldSpec
    n: int
    gram: Matrix

    def __post_init__(self) -> None:
        if self.gram.shape != (self.n, self.n) or self.gram.field != self.field:
            raise ShapeMismatch("Gram matrix must be n x n over the form's field")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "BilinearForm":
        m = Matrix.from_rows(field, rows)
        return cls(field, m.rows, m)

    @classmethod
    def diagonal(cls, field: FieldSpec, diag: Sequence[int]) -> "BilinearForm":
        n = len(diag)
        return cls.from_rows(field, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @cached_property
    def _rows(self) -> list[list[int]]:
        return self.gram.row_lists()

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        f = self.field
        s = 0
        for i, ui in enumerate(u):
            if ui:
                gv = linalg._dot(f, self._rows[i], v)
                if gv:
                    s = f.add(s, f.mul(ui, gv))
        return s

    def value(self, v: Sequence[int]) -> int:
        return self.pair(v, v)

    @property
    def kind(self) -> str:
        return "bilinear"

    @property
    def matrix(self) -> Matrix:
        return self.gram


@dataclass(frozen=True)
class QuadraticForm:
    field: FieldSpec
    n: int
    upper: Matrix

    def __post_init__(self) -> None:
        if self.upper.shape != (self.n, self.n) or self.upper.field != self.field:
            raise ShapeMismatch("coefficient matrix must be n x n over the form's field")
        if any(self.upper[i, j] for i in range(self.n) for j in range(i)):
            raise ShapeMismatch("quadratic form coefficients must be upper triangular")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "QuadraticForm":
        m = Matrix.from_rows(field, rows)
        return cls(field, m.rows, m)

    @classmethod
    def from_any(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "QuadraticForm":
        """Q(v) = v^T M v for an arbitrary square M, folded to upper-triangular form."""
        n = len(rows)
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            out[i][i] = rows[i][i]
            for j in range(i + 1, n):
                out[i][j] = field.add(rows[i][j], rows[j][i])
        return cls.from_rows(field, out)

    @classmethod
    def diagonal(cls, field: FieldSpec, diag: Sequence[int]) -> "QuadraticForm":
        n = len(diag)
        return cls.from_rows(field, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @cached_property
    def _rows(self) -> list[list[int]]:
        return self.upper.row_lists()

    def value(self, v: Sequence[int]) -> int:
        f = self.field
        s = 0
        n = self.n
        for i in range(n):
            vi = v[i]
            if not vi:
                continue
            row = self._rows[i]
            t = 0
            for j in range(i, n):
                if row[j] and v[j]:
                    t = f.add(t, f.mul(row[j], v[j]))
            if t:
                s = f.add(s, f.mul(vi, t))
        return s

    @cached_property
    def polar(self) -> BilinearForm:
        return polar_form(self)

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        return self.polar.pair(u, v)

    @property
    def kind(self) -> str:
        return "quadratic"

    @property
    def matrix(self) -> Matrix:
        return self.upper


Form = Union[BilinearForm, QuadraticForm]


class TypeTag(enum.Enum):
    ODD = "odd"
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class FormClass:
    char_parity: str  # "odd" | "even"
    dim: int
    witt_index: int
    type_tag: TypeTag
    disc_class: Optional[SquareClass] = None
    arf_bit: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "type": self.type_tag.value,
            "witt": self.witt_index,
            "disc": None if self.disc_class is None else self.disc_class.value,
            "arf": self.arf_bit,
        }


@dataclass(frozen=True)
class Predicates:
    symmetric: bool
    antisymmetric: bool
    alternating: bool
    nonsingular: bool


# -- evaluation ------------------------------------------------------------------

def _check_vec(form: Form, v: Vector) -> None:
    if v.field != form.field or len(v) != form.n:
        raise ShapeMismatch(f"expected a length-{form.n} vector over {form.field!r}")


def eval_bilinear(f: BilinearForm, u: Vector, v: Vector) -> FieldElement:
    _check_vec(f, u)
    _check_vec(f, v)
    return FieldElement(f.field, f.pair(u.entries, v.entries))


def eval_quadratic(Q: QuadraticForm, v: Vector) -> FieldElement:
    _check_vec(Q, v)
    return FieldElement(Q.field, Q.value(v.entries))


# -- predicates, radicals, polar forms -------------------------------------------

def form_predicates(f: BilinearForm) -> Predicates:
    fld, n, g = f.field, f.n, f.gram
    sym = all(g[i, j] == g[j, i] for i in range(n) for j in range(n))
    anti = all(g[i, j] == fld.neg(g[j, i]) for i in range(n) for j in range(n))
    alt = anti and all(g[i, i] == 0 for i in range(n))
    return Predicates(sym, anti, alt, linalg.rank(g) == n)


def radical_bilinear(f: BilinearForm) -> list[Vector]:
    """Vectors v with f(u, v) = 0 for every u, i.e. the kernel of the Gram matrix."""
    return linalg.kernel_basis(f.gram)


def polar_form(Q: QuadraticForm) -> BilinearForm:
    """Gram matrix U + U^T; alternating in characteristic 2."""
    fld, n, u = Q.field, Q.n, Q.upper
    rows = [[fld.add(u[i, j], u[j, i]) for j in range(n)] for i in range(n)]
    return BilinearForm.from_rows(fld, rows)


def radical_quadratic(Q: QuadraticForm) -> list[Vector]:
    """Basis of {v in rad(f_Q) : Q(v) = 0}.

    On rad(f_Q) the cross terms of Q vanish, so Q(sum c_i r_i) = sum c_i^2 Q(r_i).
    In characteristic 2 this is the square of the linear functional with
    coefficients sqrt(Q(r_i)), whose kernel is the radical.  In odd
    characteristic Q = f_Q(v, v)/2 vanishes on all of rad(f_Q).
    """
    fld = Q.field
    rad = [r.entries for r in radical_bilinear(Q.polar)]
    if not rad:
        return []
    if fld.p != 2:
        return [Vector(fld, r) for r in rad]
    functional = [fld.sqrt(Q.value(r)) for r in rad]
    out = []
    for c in linalg.kernel_rows(fld, [functional], len(rad)):
        out.append(Vector(fld, _combine(fld, c, rad)))
    return out


def quadratic_from_bilinear(f: BilinearForm) -> QuadraticForm:
    """Q_f(v) = f(v, v)/2, odd characteristic only."""
    fld = f.field
    if fld.p == 2:
        raise EvenCharacteristic("f(v, v)/2 is undefined in characteristic 2")
    if not form_predicates(f).symmetric:
        raise NotSymmetric("quadratic_from_bilinear needs a symmetric form")
    half = fld.inv(2 % fld.p)
    n, g = f.n, f.gram
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = fld.mul(half, g[i, i])
        for j in range(i + 1, n):
            rows[i][j] = g[i, j]
    return QuadraticForm.from_rows(fld, rows)


def pullback(form: Form, c: Matrix) -> Form:
    """The form v -> form(C v), expressed in the same representation."""
    if c.shape != (form.n, form.n) or c.field != form.field:
        raise ShapeMismatch("change of basis must be n x n over the form's field")
    m = linalg.matmul(linalg.transpose(c), linalg.matmul(form.matrix, c))
    if isinstance(form, BilinearForm):
        return BilinearForm(form.field, form.n, m)
    return QuadraticForm.from_any(form.field, m.row_lists())


# -- subspace helpers --------------------------------------------------------------

def _combine(fld: FieldSpec, coeffs: Sequence[int], basis: Sequence[Vec]) -> Vec:
    n = len(basis[0])
    out = [0] * n
    for c, b in zip(coeffs, basis):
        if c:
            for i, x in enumerate(b):
                if x:
                    out[i] = fld.add(out[i], fld.mul(c, x))
    return tuple(out)


def _scale(fld: FieldSpec, c: int, v: Vec) -> Vec:
    return tuple(fld.mul(c, x) for x in v)


def _axpy(fld: FieldSpec, a: int, x: Vec, y: Vec) -> Vec:
    """a*x + y"""
    return tuple(fld.add(fld.mul(a, xi), yi) for xi, yi in zip(x, y))


def projective_coords(q: int, d: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors of F^d with leading nonzero entry 1, in lexicographic order."""
    for lead in range(d - 1, -1, -1):
        for tail in itertools.product(range(q), repeat=d - 1 - lead):
            yield (0,) * lead + (1,) + tail


def _find_isotropic_in(form: Form, basis: Sequence[Vec]) -> Optional[Vec]:
    fld = form.field
    for c in projective_coords(fld.q, len(basis)):
        v = _combine(fld, c, basis)
        if form.value(v) == 0:
            return v
    return None


def _span_basis(fld: FieldSpec, vecs: Sequence[Vec]) -> list[Vec]:
    if not vecs:
        return []
    red, piv = linalg.rref(fld, [list(v) for v in vecs])
    return [tuple(r) for r in red[: len(piv)]]


def _perp_of_plane(form: Form, basis: Sequence[Vec], v: Vec, w: Vec) -> list[Vec]:
    """Basis of the part of span(basis) orthogonal to the nondegenerate plane <v, w>."""
    fld = form.field
    h = Matrix.from_rows(fld, [[form.pair(v, v), form.pair(v, w)], [form.pair(w, v), form.pair(w, w)]])
    out = []
    for x in basis:
        rhs = Vector(fld, (form.pair(v, x), form.pair(w, x)))
        a, b = linalg.solve(h, rhs).entries
        out.append(_axpy(fld, fld.neg(b), w, _axpy(fld, fld.neg(a), v, x)))
    return _span_basis(fld, out)


def _perp_of_line(form: Form, basis: Sequence[Vec], x: Vec) -> list[Vec]:
    fld = form.field
    fxx_inv = fld.inv(form.pair(x, x))
    out = [_axpy(fld, fld.neg(fld.mul(form.pair(s, x), fxx_inv)), x, s) for s in basis]
    return _span_basis(fld, out)


def _partner(form: Form, basis: Sequence[Vec], v: Vec) -> Vec:
    """First basis vector pairing nontrivially with v, scaled so the pairing is 1."""
    fld = form.field
    for s in basis:
        c = form.pair(v, s)
        if c:
            return _scale(fld, fld.inv(c), s)
    raise Singular("vector has no partner; the form is degenerate on this subspace")


def _standard_basis(n: int) -> list[Vec]:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


# -- symplectic bases ----------------------------------------------------------------

def symplectic_basis(f: BilinearForm) -> Matrix:
    """Change of basis C (columns e_1..e_m, e_{m+1}..e_{2m}) with C^T G C in normal form.

    f(e_i, e_{i+m}) = 1 = -f(e_{i+m}, e_i) and every other pairing is 0.
    """
    pred = form_predicates(f)
    if not pred.alternating:
        raise NotAlternating("symplectic_basis needs an alternating form")
    if f.n % 2:
        raise OddDimension("an alternating form in odd dimension is singular")
    if not pred.nonsingular:
        raise Singular("symplectic_basis needs a nonsingular form")
    fld = f.field
    remaining = _standard_basis(f.n)
    es, fs = [], []
    while remaining:
        u = remaining[0]
        idx, v = next((i, s) for i, s in enumerate(remaining) if f.pair(u, s))
        v = _scale(fld, fld.inv(f.pair(u, v)), v)
        es.append(u)
        fs.append(v)
        rest = []
        for i, x in enumerate(remaining):
            if i == 0 or i == idx:
                continue
            # x + f(v, x) u - f(u, x) v is orthogonal to u and v
            x = _axpy(fld, f.pair(v, x), u, x)
            x = _axpy(fld, fld.neg(f.pair(u, x)), v, x)
            rest.append(x)
        remaining = rest
    return Matrix.from_columns(fld, es + fs)


# -- odd characteristic: diagonalization -----------------------------------------------

def _as_bilinear(form: Form) -> BilinearForm:
    if isinstance(form, QuadraticForm):
        return form.polar
    return form


def _require_odd_symmetric_nonsingular(f: BilinearForm) -> None:
    if f.field.p == 2:
        raise EvenCharacteristic("bilinear classification needs odd characteristic")
    pred = form_predicates(f)
    if not pred.symmetric:
        raise NotSymmetric("form is not symmetric")
    if not pred.nonsingular:
        raise Singular("form is singular")


def sum_of_two_squares(fld: FieldSpec, target: int) -> tuple[int, int]:
    """Smallest (lambda, mu) in scan order with lambda^2 + mu^2 = target."""
    squares = [fld.mul(x, x) for x in range(fld.q)]
    for lam in range(fld.q):
        for mu in range(fld.q):
            if fld.add(squares[lam], squares[mu]) == target:
                return lam, mu
    raise AssertionError("every element of a finite field is a sum of two squares")  # pragma: no cover


def diagonalize(f: BilinearForm) -> tuple[Matrix, list[int]]:
    """Orthogonal basis (as columns) with f(e_i, e_i) = 1, except possibly a last entry alpha.

    alpha is the smallest-index non-square of the field.
    """
    _require_odd_symmetric_nonsingular(f)
    fld = f.field
    alpha = fld.nonsquare
    remaining = _standard_basis(f.n)
    basis: list[Vec] = []
    diag: list[int] = []
    while remaining:
        x = next((s for s in remaining if f.value(s)), None)
        if x is None:
            x = next(
                _axpy(fld, 1, s, t)
                for s, t in itertools.combinations(remaining, 2)
                if f.value(_axpy(fld, 1, s, t))
            )
        lam = f.value(x)
        if fld.is_square(lam):
            x = _scale(fld, fld.inv(fld.sqrt(lam)), x)
            diag.append(1)
        else:
            x = _scale(fld, fld.sqrt(fld.div(alpha, lam)), x)
            diag.append(alpha)
        basis.append(x)
        remaining = _perp_of_line(f, remaining, x)
    # two alpha entries combine into two unit entries
    lam, mu = sum_of_two_squares(fld, fld.inv(alpha)) if diag.count(alpha) > 1 else (0, 0)
    while diag.count(alpha) > 1:
        i = diag.index(alpha)
        j = diag.index(alpha, i + 1)
        ei, ej = basis[i], basis[j]
        basis[i] = _axpy(fld, lam, ei, _scale(fld, mu, ej))
        basis[j] = _axpy(fld, mu, ei, _scale(fld, fld.neg(lam), ej))
        diag[i] = diag[j] = 1
    if alpha in diag:
        i = diag.index(alpha)
        basis.append(basis.pop(i))
        diag.append(diag.pop(i))
    return Matrix.from_columns(fld, basis), diag


# -- isotropy and Witt index ----------------------------------------------------------------

def find_isotropic_vector(form: Form) -> Optional[Vector]:
    """Lexicographically smallest nonzero v with f(v, v) = 0 (resp. Q(v) = 0)."""
    v = _find_isotropic_in(form, _standard_basis(form.n))
    return None if v is None else Vector(form.field, v)


def _require_classifiable(form: Form) -> Form:
    """Return the form used for isotropy in this characteristic, checking preconditions."""
    if form.field.p != 2:
        f = _as_bilinear(form)
        _require_odd_symmetric_nonsingular(f)
        return f
    if not isinstance(form, QuadraticForm):
        raise UnsupportedCombination("characteristic 2 classification needs a quadratic form")
    if form.n % 2 == 0:
        if radical_bilinear(form.polar):
            raise Degenerate("quadratic form is degenerate (polar form has a radical)")
    elif radical_quadratic(form):
        raise SingularForm("quadratic form is singular (rad(Q) != 0)")
    return form


def _hyperbolic_split(form: Form, basis: list[Vec]) -> Optional[tuple[Vec, Vec, list[Vec]]]:
    v = _find_isotropic_in(form, basis)
    if v is None:
        return None
    w = _partner(form, basis, v)
    return v, w, _perp_of_plane(form, basis, v, w)


def witt_index(form: Form) -> int:
    """Dimension of a maximal totally isotropic subspace, by hyperbolic splitting."""
    form = _require_classifiable(form)
    basis = _standard_basis(form.n)
    m = 0
    while True:
        split = _hyperbolic_split(form, basis)
        if split is None:
            return m
        m += 1
        basis = split[2]


# -- characteristic 2 normal form and Arf invariant ---------------------------------------------

def arf_one(fld: FieldSpec) -> int:
    """Smallest-index element outside U = {u^2 + u}."""
    return next(c for c in range(fld.q) if arf_residue(FieldElement(fld, c)))


def _char2_normal_basis(Q: QuadraticForm) -> Matrix:
    """Basis e_1, f_1, ..., with hyperbolic pairs first and a canonical tail.

    Even n: the last pair spans either a hyperbolic plane or x^2 + xy + c y^2
    with c = arf_one(F).  Odd n: the last vector spans rad(f_Q), scaled to Q = 1.
    """
    fld = Q.field
    basis = _standard_basis(Q.n)
    cols: list[Vec] = []
    while len(basis) >= 2:
        v = _find_isotropic_in(Q, basis) if len(basis) > 2 or Q.n % 2 == 0 else None
        if v is not None:
            w = _partner(Q, basis, v)
            w = _axpy(fld, Q.value(w), v, w)  # Q(w + Q(w) v) = 0
        else:
            v = basis[0]
            s = fld.sqrt(Q.value(v))
            v = _scale(fld, fld.inv(s), v)
            w = _partner(Q, basis, v)
            target = fld.add(Q.value(w), arf_one(fld))
            lam = fld._artin_schreier[target]
            w = _axpy(fld, lam, v, w)
        cols += [v, w]
        basis = _perp_of_plane(Q, basis, v, w)
    if basis:
        u = basis[0]
        cols.append(_scale(fld, fld.inv(fld.sqrt(Q.value(u))), u))
    return Matrix.from_columns(fld, cols)


def arf_invariant(Q: QuadraticForm, basis: Optional[Matrix] = None) -> int:
    """Arf bit: residue of sum Q(e_i) Q(f_i) over a symplectic basis of f_Q.

    ``basis`` may supply a particular symplectic basis (columns e_1..e_m,
    f_1..f_m with f_Q(e_i, f_i) = 1); by default one is constructed.
    """
    fld = Q.field
    if fld.p != 2:
        raise OddCharacteristic("the Arf invariant is defined in characteristic 2")
    if Q.n % 2 or radical_bilinear(Q.polar):
        raise Degenerate("the Arf invariant needs a nondegenerate quadratic form")
    c = symplectic_basis(Q.polar) if basis is None else basis
    m = Q.n // 2
    cols = [col.entries for col in c.columns()]
    if basis is not None:
        g = pullback(Q.polar, c)
        expected = symplectic_normal_gram(fld, Q.n)
        if g.gram != expected:
            raise ValueError("supplied basis is not symplectic for the polar form")
    total = 0
    for e, f in zip(cols[:m], cols[m:]):
        total = fld.add(total, fld.mul(Q.value(e), Q.value(f)))
    return arf_residue(FieldElement(fld, total))


def symplectic_normal_gram(fld: FieldSpec, n: int) -> Matrix:
    m = n // 2
    rows = [[0] * n for _ in range(n)]
    for i in range(m):
        rows[i][i + m] = 1
        rows[i + m][i] = fld.neg(1)
    return Matrix.from_rows(fld, rows)


# -- classification --------------------------------------------------------------------------

def classify(form: Form) -> FormClass:
    work = _require_classifiable(form)
    fld, n = form.field, form.n
    m = witt_index(work)
    if n % 2:
        tag = TypeTag.ODD
    elif m == n // 2:
        tag = TypeTag.PLUS
    else:
        assert m == n // 2 - 1, f"Witt index {m} impossible for n={n}"
        tag = TypeTag.MINUS
    if fld.p != 2:
        det = linalg.determinant(work.gram)
        return FormClass("odd", n, m, tag, disc_class=square_class(FieldElement(fld, det)))
    arf = None
    if n % 2 == 0:
        arf = arf_invariant(work)
        assert (arf == 0) == (tag is TypeTag.PLUS), "Arf bit disagrees with the Witt index"
    return FormClass("even", n, m, tag, arf_bit=arf)


def normalizing_basis(form: Form) -> Matrix:
    """P such that pullback(form, P) is the canonical representative of its class."""
    work = _require_classifiable(form)
    if form.field.p != 2:
        return diagonalize(work)[0]
    return _char2_normal_basis(work)


def equivalence_witness(a: Form, b: Form) -> Optional[Matrix]:
    """C with a(v) = b(C v) for all v, or ``None`` when the forms are inequivalent."""
    if a.field != b.field or a.n != b.n or type(a) is not type(b):
        raise FormMismatch("forms must share field, dimension and kind")
    if classify(a) != classify(b):
        return None
    pa, pb = normalizing_basis(a), normalizing_basis(b)
    c = linalg.matmul(pb, linalg.inverse(pa))
    if pullback(b, c) != a:
        raise AssertionError("equivalence witness failed verification")  # pragma: no cover
    return c


# -- random generation ------------------------------------------------------------------------

def random_symmetric_nonsingular(fld: FieldSpec, n: int, rng: random.Random) -> BilinearForm:
    while True:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = rng.randrange(fld.q)
        f = BilinearForm.from_rows(fld, rows)
        if linalg.rank(f.gram) == n:
            return f


def random_nondegenerate_quadratic(fld: FieldSpec, n: int, rng: random.Random) -> QuadraticForm:
    """Random Q with rad(Q) = 0; for even n in characteristic 2 also rad(f_Q) = 0."""
    while True:
        rows = [[rng.randrange(fld.q) if j >= i else 0 for j in range(n)] for i in range(n)]
        Q = QuadraticForm.from_rows(fld, rows)
        if fld.p == 2 and n % 2 == 1:
            if not radical_quadratic(Q):
                return Q
        elif not radical_bilinear(Q.polar):
            return Q


def random_invertible(fld: FieldSpec, n: int, rng: random.Random) -> Matrix:
    while True:
        m = Matrix(fld, n, n, tuple(rng.randrange(fld.q) for _ in range(n * n)))
        if linalg.rank(m) == n:
            return m


def random_symplectic_basis(f: BilinearForm, rng: random.Random) -> Matrix:
    """A symplectic basis obtained by normalizing a randomly conjugated copy of f."""
    r = random_invertible(f.field, f.n, rng)
    return linalg.matmul(r, symplectic_basis(pullback(f, r)))


# -- standard forms ----------------------------------------------------------------------------

def hyperbolic_quadratic(fld: FieldSpec, m: int) -> QuadraticForm:
    """x_1 y_1 + ... + x_m y_m in coordinates (x_1, y_1, ..., x_m, y_m)."""
    n = 2 * m
    rows = [[0] * n for _ in range(n)]
    for i in range(m):
        rows[2 * i][2 * i + 1] = 1
    return QuadraticForm.from_rows(fld, rows)


def standard_quadratic(fld: FieldSpec, n: int, tag: TypeTag) -> QuadraticForm:
    """Canonical representative of the given type in dimension n.

    Odd characteristic: diagonal forms diag(1, ..., 1) / diag(1, ..., 1, alpha),
    choosing whichever has the requested Witt index.  Characteristic 2: the
    normal forms produced by the classification (hyperbolic pairs plus an
    anisotropic plane or a single square term).
    """
    if fld.p != 2:
        if (n % 2 == 1) != (tag is TypeTag.ODD):
            raise UnsupportedCombination(f"type {tag.value} does not match n={n}")
        ones = QuadraticForm.diagonal(fld, [1] * n)
        if tag is TypeTag.ODD:
            return ones
        other = QuadraticForm.diagonal(fld, [1] * (n - 1) + [fld.nonsquare])
        for cand in (ones, other):
            if classify(cand).type_tag is tag:
                return cand
        raise AssertionError("unreachable")  # pragma: no cover
    m = n // 2
    if n % 2:
        if tag is not TypeTag.ODD:
            raise UnsupportedCombination(f"type {tag.value} does not match n={n}")
        base = hyperbolic_quadratic(fld, m).upper.row_lists() if m else []
        rows = [r + [0] for r in base] + [[0] * (n - 1) + [1]]
        return QuadraticForm.from_rows(fld, rows)
    if tag is TypeTag.ODD:
        raise UnsupportedCombination(f"type odd does not match n={n}")
    rows = hyperbolic_quadratic(fld, m).upper.row_lists()
    if tag is TypeTag.MINUS:
        rows[n - 2][n - 2] = 1
        rows[n - 1][n - 1] = arf_one(fld)
    return QuadraticForm.from_rows(fld, rows)


def standard_bilinear(fld: FieldSpec, n: int, tag: TypeTag) -> BilinearForm:
    """Odd characteristic: the polar form of :func:`standard_quadratic` halved (a diagonal form)."""
    if fld.p == 2:
        raise EvenCharacteristic("orthogonal groups in characteristic 2 are defined by quadratic forms")
    Q = standard_quadratic(fld, n, tag)
    return BilinearForm.diagonal(fld, [Q.upper[i, i] for i in range(n)])
