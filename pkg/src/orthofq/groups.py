"""Orthogonal and symplectic groups as explicit matrix groups.

Odd characteristic groups preserve a symmetric bilinear form; characteristic 2
orthogonal groups preserve a quadratic form (and hence its alternating polar
form); symplectic groups preserve an alternating nonsingular bilinear form.
Complete groups are produced by backtracking on the images of the basis
vectors (see :mod:`orthofq.engine`), never by filtering GL(n, q).
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np

from . import engine, linalg
from .errors import (
    BudgetExceeded,
    EvenCharacteristic,
    EvenDimension,
    IsotropicVector,
    NotAnIsometry,
    NotSpecial,
    OddCharacteristic,
    ShapeMismatch,
    SingularForm,
    SingularVector,
    UnsupportedCombination,
)
from .forms import (
    BilinearForm,
    Form,
    FormClass,
    QuadraticForm,
    TypeTag,
    _as_bilinear,
    classify,
    diagonalize,
    form_predicates,
    projective_coords,
    radical_bilinear,
    radical_quadratic,
)
from .gf import FieldElement, FieldSpec, SquareClass, square_class
from .linalg import Matrix, Vector

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    return int(os.environ.get("ORTHO_BUDGET", DEFAULT_BUDGET))


# -- isometries --------------------------------------------------------------------

def _preserved_form(form: Form) -> Form:
    """The form whose basis-pair values an isometry must preserve."""
    if isinstance(form, QuadraticForm) and form.field.p != 2:
        return form.polar
    return form


def is_isometry(g: Matrix, form: Form) -> bool:
    if g.shape != (form.n, form.n) or g.field != form.field:
        raise ShapeMismatch("matrix must be n x n over the form's field")
    if linalg.rank(g) != form.n:
        return False
    work = _preserved_form(form)
    cols = [c.entries for c in g.columns()]
    n = form.n
    if isinstance(work, QuadraticForm):
        e = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        if any(work.value(cols[i]) != work.value(e[i]) for i in range(n)):
            return False
        pol = work.polar.gram
        return all(work.polar.pair(cols[i], cols[j]) == pol[i, j] for i in range(n) for j in range(i + 1, n))
    gram = work.gram
    return all(work.pair(cols[i], cols[j]) == gram[i, j] for i in range(n) for j in range(n))


@dataclass(frozen=True, eq=False)
class Isometry:
    """An invertible matrix certified to preserve ``form``."""

    form: Form
    mat: Matrix
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self) -> None:
        if self.check and not is_isometry(self.mat, self.form):
            raise NotAnIsometry("matrix does not preserve the form")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Isometry) and self.form == other.form and self.mat == other.mat

    def __hash__(self) -> int:
        return hash(self.mat)

    def __mul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.form, linalg.matmul(self.mat, other.mat), check=False)

    def inverse(self) -> "Isometry":
        return Isometry(self.form, linalg.inverse(self.mat), check=False)

    def apply(self, v: Vector) -> Vector:
        return linalg.matvec(self.mat, v)

    @cached_property
    def det(self) -> int:
        """Determinant as a field element index."""
        return linalg.determinant(self.mat)

    @cached_property
    def det_sign(self) -> int:
        if self.det == 1:
            return 1
        if self.det == self.form.field.neg(1):
            return -1
        raise AssertionError("orthogonal matrices have determinant +-1")

    @cached_property
    def dickson(self) -> int:
        return dickson_invariant(self)

    @cached_property
    def spinor(self) -> SquareClass:
        return spinor_norm(self)


def identity_isometry(form: Form) -> Isometry:
    return Isometry(form, linalg.identity(form.field, form.n), check=False)


def reflection(v: Vector, f: Form) -> Isometry:
    """r_v(x) = x - 2 f(x, v)/f(v, v) v (odd characteristic)."""
    fld = f.field
    if fld.p == 2:
        raise EvenCharacteristic("reflections are defined in odd characteristic; use transvection")
    b = _as_bilinear(f)
    fvv = b.pair(v.entries, v.entries)
    if fvv == 0:
        raise IsotropicVector("cannot reflect in an isotropic vector")
    scale = fld.div(fld.add(1, 1), fvv)
    cols = []
    for j in range(f.n):
        e = tuple(1 if i == j else 0 for i in range(f.n))
        c = fld.neg(fld.mul(scale, b.pair(e, v.entries)))
        cols.append(tuple(fld.add(ei, fld.mul(c, vi)) for ei, vi in zip(e, v.entries)))
    return Isometry(f, Matrix.from_columns(fld, cols), check=False)


def transvection(v: Vector, Q: QuadraticForm) -> Isometry:
    """t_v(x) = x + f_Q(x, v)/Q(v) v (characteristic 2)."""
    fld = Q.field
    if fld.p != 2:
        raise OddCharacteristic("orthogonal transvections are the characteristic 2 analogue of reflections")
    qv = Q.value(v.entries)
    if qv == 0:
        raise SingularVector("transvection needs Q(v) != 0")
    inv = fld.inv(qv)
    cols = []
    for j in range(Q.n):
        e = tuple(1 if i == j else 0 for i in range(Q.n))
        c = fld.mul(inv, Q.pair(e, v.entries))
        cols.append(tuple(fld.add(ei, fld.mul(c, vi)) for ei, vi in zip(e, v.entries)))
    return Isometry(Q, Matrix.from_columns(fld, cols), check=False)


def _apply_cols(fld: FieldSpec, cols: Sequence[tuple[int, ...]], v: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(cols[0])
    for c, vi in zip(cols, v):
        if vi:
            for i, x in enumerate(c):
                if x:
                    out[i] = fld.add(out[i], fld.mul(vi, x))
    return tuple(out)


@functools.lru_cache(maxsize=256)
def _orthogonal_basis(f: BilinearForm) -> tuple[tuple[int, ...], ...]:
    p, _ = diagonalize(f)
    return tuple(c.entries for c in p.columns())


def decompose_into_reflections(g: Isometry, order: Optional[Sequence[int]] = None) -> list[Vector]:
    """Vectors v_1..v_r with g = r_{v_1} ... r_{v_r}, r <= 2n.

    Peels g along an orthogonal basis b_1..b_n of the form (visited in
    ``order``, default 0..n-1).  When h(b) != b, the single reflection in
    h(b) - b fixes b unless that vector is isotropic; then h(b) + b is
    anisotropic and r_b r_{h(b)+b} sends h(b) to b.  Since the basis is
    orthogonal every reflection used fixes the basis vectors already peeled.
    """
    fld = g.form.field
    if fld.p == 2:
        raise EvenCharacteristic("reflection factorization needs odd characteristic")
    f = _as_bilinear(g.form)
    basis = _orthogonal_basis(f)
    order = range(f.n) if order is None else order
    h = [c.entries for c in g.mat.columns()]
    used: list[tuple[int, ...]] = []

    def reflect(u: tuple[int, ...]) -> None:
        nonlocal h
        scale = fld.div(fld.add(1, 1), f.pair(u, u))
        new = []
        for col in h:
            c = fld.neg(fld.mul(scale, f.pair(col, u)))
            new.append(tuple(fld.add(x, fld.mul(c, ui)) for x, ui in zip(col, u)))
        h = new
        used.append(u)

    for i in order:
        b = basis[i]
        hb = _apply_cols(fld, h, b)
        if hb == b:
            continue
        w = tuple(fld.sub(x, y) for x, y in zip(hb, b))
        if f.pair(w, w):
            reflect(w)
        else:
            reflect(tuple(fld.add(x, y) for x, y in zip(hb, b)))
            reflect(b)
    ident = linalg.identity(fld, f.n).columns()
    assert [c.entries for c in ident] == h, "peeling did not reach the identity"
    return [Vector(fld, u) for u in used]


def spinor_norm(g: Isometry, order: Optional[Sequence[int]] = None) -> SquareClass:
    """Product of the square classes of f(v_i, v_i) over a reflection factorization.

    SQUARE encodes spinor norm 1 and NONSQUARE encodes -1.
    """
    if g.form.field.p == 2:
        raise EvenCharacteristic("the spinor norm is replaced by the Dickson invariant in characteristic 2")
    if g.det != 1:
        raise NotSpecial("spinor norm is defined on SO (determinant 1)")
    f = _as_bilinear(g.form)
    result = SquareClass.SQUARE
    for v in decompose_into_reflections(g, order):
        result = result * square_class(FieldElement(f.field, f.pair(v.entries, v.entries)))
    return result


def spinor_parities(g: Isometry) -> tuple[int, int]:
    """(#square-norm, #non-square-norm) reflections in the default factorization."""
    f = _as_bilinear(g.form)
    counts = [0, 0]
    for v in decompose_into_reflections(g):
        counts[0 if f.field.is_square(f.pair(v.entries, v.entries)) else 1] += 1
    return counts[0], counts[1]


def dickson_invariant(g: Isometry | Matrix) -> int:
    """rank(Id - g) mod 2."""
    mat = g.mat if isinstance(g, Isometry) else g
    return linalg.rank(linalg.sub(linalg.identity(mat.field, mat.rows), mat)) % 2


# -- orders ------------------------------------------------------------------------

def _prod(values) -> int:
    return math.prod(values)


def orthogonal_even_order(q: int, m: int, sign: int) -> int:
    """2 (q^m - sign) q^(m(m-1)) prod_{i=1}^{m-1} (q^(2m-2i) - 1)."""
    return 2 * (q**m - sign) * q ** (m * (m - 1)) * _prod(q ** (2 * m - 2 * i) - 1 for i in range(1, m))


def symplectic_order(q: int, n: int) -> int:
    m = n // 2
    return q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def orthogonal_odd_order(q: int, n: int) -> int:
    m = n // 2
    return 2 * q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def _closed_form(kind: str, tag: Optional[TypeTag], n: int, fld: FieldSpec) -> int:
    q = fld.q
    if kind == "Sp":
        if n % 2:
            raise UnsupportedCombination("symplectic groups need even dimension")
        return symplectic_order(q, n)
    if kind != "O":
        raise UnsupportedCombination(f"unknown group kind {kind!r}")
    if n % 2 == 0:
        if tag not in (TypeTag.PLUS, TypeTag.MINUS):
            raise UnsupportedCombination(f"even n={n} needs type plus or minus")
        return orthogonal_even_order(q, n // 2, 1 if tag is TypeTag.PLUS else -1)
    if tag not in (None, TypeTag.ODD):
        raise UnsupportedCombination(f"odd n={n} has no plus/minus type")
    if fld.p == 2:
        return symplectic_order(q, n - 1)
    return orthogonal_odd_order(q, n)


@functools.lru_cache(maxsize=None)
def _validated_order(kind: str, tag: Optional[TypeTag], n: int, fld: FieldSpec, budget: int) -> int:
    value = _closed_form(kind, tag, n, fld)
    if value > budget or fld.q**n > engine.MAX_VECTORS:
        raise UnsupportedCombination(
            f"|{kind}({n}, {fld.q})| has no cited formula and is too large to validate by enumeration"
        )
    form = standard_form(kind, tag, n, fld)
    enumerated = len(enumerate_group(form, budget=budget))
    if enumerated != value:
        raise AssertionError(f"closed form {value} disagrees with enumeration {enumerated}")
    return value


def group_order(kind: str, type_tag: Optional[TypeTag], n: int, fld: FieldSpec, *, budget: Optional[int] = None) -> int:
    """Exact order of O^+/O^-(n), O(n) or Sp(n) over ``fld``.

    Even-dimensional orthogonal orders come straight from the closed formula.
    The remaining closed forms are only returned after the enumeration oracle
    has reproduced them.
    """
    if n < 2:
        raise UnsupportedCombination("n must be at least 2")
    if kind == "O" and n % 2 == 0:
        return _closed_form(kind, type_tag, n, fld)
    return _validated_order(kind, type_tag, n, fld, budget or default_budget())


def estimated_order(form: Form) -> int:
    if isinstance(form, BilinearForm) and form_predicates(form).alternating:
        return _closed_form("Sp", None, form.n, form.field)
    tag = classify(form).type_tag
    return _closed_form("O", tag, form.n, form.field)


def standard_form(kind: str, tag: Optional[TypeTag], n: int, fld: FieldSpec) -> Form:
    from .forms import standard_quadratic, symplectic_normal_gram

    if kind == "Sp":
        return BilinearForm(fld, n, symplectic_normal_gram(fld, n))
    if n % 2 == 1:
        tag = TypeTag.ODD
    return standard_quadratic(fld, n, tag)


# -- enumeration ----------------------------------------------------------------------

@functools.lru_cache(maxsize=64)
def _form_tables(form: Form):
    """Vector space, pair table, value table, Gram matrix and target diagonal for a form."""
    fld, n = form.field, form.n
    space = engine.VectorSpace(fld, n)
    work = _preserved_form(form)
    if isinstance(work, QuadraticForm):
        gram = np.array(work.polar.gram.row_lists(), dtype=np.int64)
        values = space.quadratic_values(np.array(work.upper.row_lists(), dtype=np.int64))
        diag = [work.upper[i, i] for i in range(n)]
    else:
        gram = np.array(work.gram.row_lists(), dtype=np.int64)
        values = None
        diag = [int(gram[i, i]) for i in range(n)]
    pair = space.pair_table(gram)
    if values is None:
        values = np.diagonal(pair).copy()
    return space, pair, values, gram, diag


def _require_group_form(form: Form) -> None:
    fld = form.field
    if isinstance(form, BilinearForm):
        pred = form_predicates(form)
        if not pred.nonsingular:
            raise SingularForm("the form is singular")
        if pred.alternating:
            return
        if fld.p == 2:
            raise UnsupportedCombination("characteristic 2 orthogonal groups are defined by quadratic forms")
        if not pred.symmetric:
            raise UnsupportedCombination("form is neither symmetric nor alternating")
        return
    if fld.p != 2:
        if radical_bilinear(form.polar):
            raise SingularForm("the quadratic form is singular")
    elif radical_quadratic(form):
        raise SingularForm("the quadratic form is singular")


class EnumeratedGroup:
    """A finite matrix group preserving ``form``, held as a sorted element table."""

    def __init__(self, form: Form, table: engine.ElementTable):
        self.form = form
        self.table = table
        self.field = form.field
        self.n = form.n

    def __len__(self) -> int:
        return len(self.table)

    def __iter__(self) -> Iterator[Isometry]:
        for i in range(len(self)):
            yield self.element(i)

    def element(self, i: int) -> Isometry:
        m = self.table.matrices[i]
        return Isometry(self.form, Matrix.from_rows(self.field, m.tolist()), check=False)

    def index(self, g: Isometry | Matrix) -> int:
        mat = g.mat if isinstance(g, Isometry) else g
        cols = engine.matrix_to_cols(self.table.space, mat.row_lists())
        return int(self.table.lookup(cols[None, :])[0])

    def __contains__(self, g: Isometry | Matrix) -> bool:
        return self.index(g) >= 0

    def key_set(self) -> frozenset[int]:
        return frozenset(self.table.keys.tolist())

    def subset(self, mask: np.ndarray) -> "EnumeratedGroup":
        return EnumeratedGroup(self.form, engine.ElementTable(self.table.space, self.table.cols[mask]))

    def is_closed(self) -> bool:
        """Closure under products and inverses (finite sets closed under products are groups)."""
        return len(self) > 0 and self.table.identity_index >= 0 and self.table.is_closed()

    def product_indices(self, g: int, rows: Optional[np.ndarray] = None) -> np.ndarray:
        return self.table.lookup(self.table.products_left(g, rows))

    @cached_property
    def _rank_det(self) -> tuple[np.ndarray, np.ndarray]:
        fld = self.field
        mats = self.table.matrices
        eye = np.eye(self.n, dtype=np.int64)
        neg = np.asarray(fld.neg_table)
        diff = fld.add_table[eye[None], neg[mats]]
        rank, _ = engine.batched_rank_det(fld, diff)
        _, det = engine.batched_rank_det(fld, mats)
        return rank, det

    @property
    def dickson(self) -> np.ndarray:
        return self._rank_det[0] % 2

    @property
    def det(self) -> np.ndarray:
        return self._rank_det[1]

    @cached_property
    def spinor(self) -> np.ndarray:
        """+1 / -1 spinor norm per element, 0 outside SO (odd characteristic)."""
        out = np.zeros(len(self), dtype=np.int64)
        for i in np.flatnonzero(self.det == 1):
            out[i] = spinor_norm(self.element(int(i))).sign
        return out

    def homomorphism_violations(self, values: np.ndarray, domain: Optional[np.ndarray] = None,
                                max_pairs: Optional[int] = None) -> int:
        """Number of pairs (g, h) in ``domain`` with values[gh] != values[g] * values[h].

        ``values`` are +-1 (multiplicative) or 0/1 (additive mod 2).  Pairs are
        taken in full unless ``max_pairs`` is smaller than |domain|^2, in which
        case a deterministic stride of left factors is used.
        """
        dom = np.arange(len(self)) if domain is None else np.flatnonzero(domain)
        additive = set(np.unique(values[dom]).tolist()) <= {0, 1}
        lefts = dom
        if max_pairs is not None and len(dom) ** 2 > max_pairs:
            step = max(1, len(dom) ** 2 // max_pairs)
            lefts = dom[::step]
        bad = 0
        for g in lefts:
            prod = self.product_indices(int(g), dom)
            if np.any(prod < 0):
                raise AssertionError("set is not closed under multiplication")
            expect = (values[g] + values[dom]) % 2 if additive else values[g] * values[dom]
            bad += int(np.count_nonzero(values[prod] != expect))
        return bad


def enumerate_group(form: Form, *, budget: Optional[int] = None) -> EnumeratedGroup:
    """All isometries of ``form`` by backtracking on the basis images."""
    _require_group_form(form)
    budget = budget or default_budget()
    estimate = estimated_order(form)
    if estimate > budget:
        raise BudgetExceeded(f"group of order {estimate} exceeds the budget {budget}")
    space, pair, values, gram, diag = _form_tables(form)
    cols = engine.backtrack_isometries(space, pair, values, gram, diag, budget)
    return EnumeratedGroup(form, engine.ElementTable(space, cols))


def subgroup_generated(gens: Sequence[Isometry], *, form: Optional[Form] = None,
                       budget: Optional[int] = None) -> EnumeratedGroup:
    """Closure of ``gens`` under products, breadth first."""
    if form is None:
        if not gens:
            raise ValueError("need a form when there are no generators")
        form = gens[0].form
    budget = budget or default_budget()
    space = engine.VectorSpace(form.field, form.n)
    mats = np.array([g.mat.row_lists() for g in gens], dtype=np.int64).reshape(-1, form.n, form.n)
    cols = engine.closure(space, mats, budget)
    return EnumeratedGroup(form, engine.ElementTable(space, cols))


def reflections_of(form: Form) -> list[Isometry]:
    """One reflection per anisotropic projective point."""
    b = _as_bilinear(form)
    out = []
    for c in projective_coords(form.field.q, form.n):
        if b.pair(c, c):
            out.append(reflection(Vector(form.field, c), form))
    return out


def transvections_of(Q: QuadraticForm) -> list[Isometry]:
    """One transvection per projective point v with Q(v) != 0 (t_v depends only on <v>)."""
    out = []
    for c in projective_coords(Q.field.q, Q.n):
        if Q.value(c):
            out.append(transvection(Vector(Q.field, c), Q))
    return out


# -- handles and subgroup reports ---------------------------------------------------------

@dataclass
class GroupHandle:
    form: Form
    kind: str  # "O" | "Sp"
    type_tag: Optional[TypeTag]
    generators: list[Isometry] = dc_field(default_factory=list)
    budget: Optional[int] = None
    _order: Optional[int] = dc_field(default=None, repr=False)
    _elements: Optional[EnumeratedGroup] = dc_field(default=None, repr=False)

    @property
    def elements(self) -> EnumeratedGroup:
        if self._elements is None:
            self._elements = enumerate_group(self.form, budget=self.budget)
            if self._order is not None and self._order != len(self._elements):
                raise AssertionError("cached order disagrees with enumeration")
        return self._elements

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = len(self._elements) if self._elements is not None else len(self.elements)
        return self._order


def orthogonal_group(form: Form, *, budget: Optional[int] = None, with_generators: bool = True) -> GroupHandle:
    _require_group_form(form)
    tag = classify(form).type_tag
    gens: list[Isometry] = []
    if with_generators:
        gens = reflections_of(form) if form.field.p != 2 else transvections_of(form)
    return GroupHandle(form, "O", tag, gens, budget)


def symplectic_group(f: BilinearForm, *, budget: Optional[int] = None) -> GroupHandle:
    pred = form_predicates(f)
    if not (pred.alternating and pred.nonsingular):
        raise UnsupportedCombination("symplectic groups need an alternating nonsingular form")
    return GroupHandle(f, "Sp", None, [], budget)


@dataclass(frozen=True)
class SubgroupReport:
    tag: str  # SO | Omega | Commutator | PO | PSO | POmega
    parent_order: int
    order: int
    index: int
    matches_omega: Optional[bool] = None

    def to_json(self) -> dict:
        out = {"tag": self.tag, "order": self.order, "index": self.index}
        if self.matches_omega is not None:
            out["matches_omega"] = self.matches_omega
        return out


def _report(tag: str, parent: int, order: int, **kw) -> SubgroupReport:
    assert parent % order == 0
    return SubgroupReport(tag, parent, order, parent // order, **kw)


def _as_enumerated(G: GroupHandle | EnumeratedGroup) -> EnumeratedGroup:
    return G.elements if isinstance(G, GroupHandle) else G


def omega_mask(G: GroupHandle | EnumeratedGroup) -> np.ndarray:
    """Boolean mask of the spinor kernel: ker(spinor) in SO, or ker(D) in characteristic 2."""
    E = _as_enumerated(G)
    if E.field.p == 2:
        if E.n % 2:
            # rank(Id - g) mod 2 is not multiplicative here (O(3, 4) already fails)
            raise UnsupportedCombination("the Dickson kernel is only a subgroup for even n in characteristic 2")
        return E.dickson == 0
    return E.spinor == 1


def kernel_subgroups(G: GroupHandle | EnumeratedGroup) -> list[SubgroupReport]:
    E = _as_enumerated(G)
    order = len(E)
    if E.field.p == 2 and E.n % 2:
        # det is trivial, so SO = O; Omega falls back to the commutator subgroup
        _, sub = commutator_subgroup(E)
        om = len(sub)
        return [
            _report("SO", order, order),
            _report("Omega", order, om),
            _report("PO", order, order),
            _report("PSO", order, order),
            _report("POmega", om, om),
        ]
    if E.field.p == 2:
        ker = int(np.count_nonzero(E.dickson == 0))
        # -Id = Id, so the projective groups coincide with the linear ones
        return [
            _report("SO", order, ker),
            _report("Omega", order, ker),
            _report("PO", order, order),
            _report("PSO", ker, ker),
            _report("POmega", ker, ker),
        ]
    one = 1
    minus = E.field.neg(1)
    so_mask = E.det == one
    so = int(np.count_nonzero(so_mask))
    om_mask = omega_mask(E)
    om = int(np.count_nonzero(om_mask))
    neg_id = E.index(linalg.scalar_mul(minus, linalg.identity(E.field, E.n)))

    def centre(mask: np.ndarray) -> int:
        return 2 if neg_id >= 0 and mask[neg_id] else 1

    everything = np.ones(order, dtype=bool)
    return [
        _report("SO", order, so),
        _report("Omega", so, om),
        _report("PO", order, order // centre(everything)),
        _report("PSO", so, so // centre(so_mask)),
        _report("POmega", om, om // centre(om_mask)),
    ]


COMMUTATOR_LIMIT = 5000


def commutator_subgroup(G: GroupHandle | EnumeratedGroup, *, budget: Optional[int] = None) -> tuple[SubgroupReport, EnumeratedGroup]:
    """Closure of all commutators g^-1 h^-1 g h, compared with the spinor kernel."""
    E = _as_enumerated(G)
    if len(E) > COMMUTATOR_LIMIT:
        raise BudgetExceeded(f"commutator enumeration limited to groups of order <= {COMMUTATOR_LIMIT}")
    t = E.table
    inv = t.inverses
    keys: set[int] = set()
    rows = []
    hinv_perm = t.perms[inv]  # row h acts as h^-1
    for g in range(len(E)):
        gh = t.products_left(g)
        x = np.take_along_axis(hinv_perm, gh, axis=1)
        # g^-1 h^-1 g h
        comm = t.perms[inv[g]][x]
        ks = t._keys(comm)
        _, first = np.unique(ks, return_index=True)
        for i in first:
            k = int(ks[i])
            if k not in keys:
                keys.add(k)
                rows.append(comm[i])
    mats = np.transpose(t.space.vectors[np.array(rows)], (0, 2, 1))
    cols = engine.closure(t.space, mats, budget or default_budget())
    sub = EnumeratedGroup(E.form, engine.ElementTable(t.space, cols))
    try:
        omega = E.subset(omega_mask(E))
        same: Optional[bool] = sub.key_set() == omega.key_set()
    except UnsupportedCombination:
        same = None
    return _report("Commutator", len(E), len(sub), matches_omega=same), sub


# -- characteristic 2, odd dimension ---------------------------------------------------------

class Char2OddIsomorphism:
    """The map O(V, Q) -> Sp(W, f_Q|W) for char 2, odd n, nonsingular Q.

    rad(f_Q) is spanned by a single vector u with u[c] = 1, c its free
    coordinate in the kernel computation.  W is spanned by the standard basis
    vectors e_i, i != c, and g' = (projection along u) o g restricted to W.
    """

    def __init__(self, Q: QuadraticForm):
        fld = Q.field
        if fld.p != 2:
            raise OddCharacteristic("the isomorphism with Sp(n-1) is a characteristic 2 phenomenon")
        if Q.n % 2 == 0:
            raise EvenDimension("O(V, Q) embeds in Sp(n) for even n; no isomorphism with Sp(n-1)")
        if radical_quadratic(Q):
            raise SingularForm("Q must be nonsingular")
        rad = radical_bilinear(Q.polar)
        assert len(rad) == 1, "nonsingular odd-dimensional Q has a one-dimensional polar radical"
        self.Q = Q
        self.radical = rad[0]
        u = self.radical.entries
        self.coordinate = _free_coordinate(u)
        self.complement = [i for i in range(Q.n) if i != self.coordinate]
        g = Q.polar.gram
        self.symplectic_form = BilinearForm.from_rows(
            fld, [[g[i, j] for j in self.complement] for i in self.complement]
        )

    def matrix(self, mat: Matrix) -> Matrix:
        fld = self.Q.field
        u = self.radical.entries
        c = self.coordinate
        cols = []
        for j in self.complement:
            col = mat.column(j).entries
            lam = col[c]
            proj = [fld.sub(x, fld.mul(lam, ui)) for x, ui in zip(col, u)]
            cols.append(tuple(proj[i] for i in self.complement))
        return Matrix.from_columns(fld, cols)

    def __call__(self, g: Isometry) -> Isometry:
        return Isometry(self.symplectic_form, self.matrix(g.mat), check=False)


def _free_coordinate(u: Sequence[int]) -> int:
    # a one-dimensional kernel vector is 1 at its free column and zero after it
    return max(i for i, x in enumerate(u) if x)


def char2_odd_isomorphism(Q: QuadraticForm) -> Char2OddIsomorphism:
    return Char2OddIsomorphism(Q)


# -- classification table ------------------------------------------------------------------

@dataclass(frozen=True)
class GroupKind:
    family: str  # "O" | "O+" | "O-" | "Sp"
    dim: int
    form_class: FormClass

    @property
    def label(self) -> str:
        return f"{self.family}({self.dim})"


def group_kind(n: int, fld: FieldSpec, form: Form) -> GroupKind:
    """The cell of the classification table realized by ``form``."""
    if n < 2:
        raise UnsupportedCombination("n must be at least 2")
    if form.n != n or form.field != fld:
        raise ShapeMismatch("form does not match (n, field)")
    cls = classify(form)
    if n % 2 == 0:
        return GroupKind("O+" if cls.type_tag is TypeTag.PLUS else "O-", n, cls)
    if fld.p == 2:
        char2_odd_isomorphism(form)
        return GroupKind("Sp", n - 1, cls)
    return GroupKind("O", n, cls)
