"""Dense vectors and matrices over a :class:`~orthofq.gf.FieldSpec`.

Entries are stored as canonical element indexes.  Elimination uses
deterministic pivoting: the first nonzero entry, scanning columns left to
right and rows top to bottom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DimensionOutOfRange, FieldMismatch, ShapeMismatch, Singular
from .gf import FieldElement, FieldSpec

MAX_DIM = 12


@dataclass(frozen=True)
class Vector:
    field: FieldSpec
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.entries) <= MAX_DIM:
            raise DimensionOutOfRange(f"vector length must be in [1, {MAX_DIM}]")

    @classmethod
    def of(cls, field: FieldSpec, entries: Iterable[int | FieldElement]) -> "Vector":
        return cls(field, tuple(int(e) % field.q if isinstance(e, int) else e.index for e in entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.entries[i])

    def __iter__(self):
        return iter(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "Vector") -> "Vector":
        _same(self.field, other.field)
        if len(self) != len(other):
            raise ShapeMismatch("vector lengths differ")
        f = self.field
        return Vector(f, tuple(f.add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Vector") -> "Vector":
        return self + other.scale(self.field.neg(1))

    def scale(self, c: int) -> "Vector":
        f = self.field
        return Vector(f, tuple(f.mul(c, a) for a in self.entries))

    def to_json(self) -> list[int]:
        return list(self.entries)


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ShapeMismatch("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch("entry count does not match shape")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int | FieldElement]]) -> "Matrix":
        if not rows or len({len(r) for r in rows}) != 1:
            raise ShapeMismatch("rows must be non-empty and of equal length")
        flat = []
        for r in rows:
            for e in r:
                if isinstance(e, FieldElement):
                    _same(field, e.field)
                    flat.append(e.index)
                else:
                    if not 0 <= int(e) < field.q:
                        raise ValueError(f"entry {e} is not an element index of {field!r}")
                    flat.append(int(e))
        return cls(field, len(rows), len(rows[0]), tuple(flat))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Vector | Sequence[int]]) -> "Matrix":
        cols = [list(c.entries if isinstance(c, Vector) else c) for c in columns]
        return cls.from_rows(field, [list(r) for r in zip(*cols)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> Vector:
        return Vector(self.field, self.entries[j::self.cols])

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def __matmul__(self, other):
        if isinstance(other, Vector):
            return matvec(self, other)
        return matmul(self, other)

    def to_json(self) -> list[list[int]]:
        return self.row_lists()

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.row_lists()})"


def _same(a: FieldSpec, b: FieldSpec) -> None:
    if a != b:
        raise FieldMismatch(f"{a!r} vs {b!r}")


def identity(field: FieldSpec, n: int) -> Matrix:
    return Matrix(field, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def zeros(field: FieldSpec, rows: int, cols: Optional[int] = None) -> Matrix:
    cols = rows if cols is None else cols
    return Matrix(field, rows, cols, (0,) * (rows * cols))


def transpose(m: Matrix) -> Matrix:
    return Matrix(m.field, m.cols, m.rows, tuple(m.entries[i * m.cols + j] for j in range(m.cols) for i in range(m.rows)))


def _dot(field: FieldSpec, a: Sequence[int], b: Sequence[int]) -> int:
    s = 0
    mul, add = field.mul, field.add
    for x, y in zip(a, b):
        if x and y:
            s = add(s, mul(x, y))
    return s


def matmul(a: Matrix, b: Matrix) -> Matrix:
    _same(a.field, b.field)
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    f = a.field
    arows = a.row_lists()
    bcols = [b.entries[j::b.cols] for j in range(b.cols)]
    return Matrix(f, a.rows, b.cols, tuple(_dot(f, r, c) for r in arows for c in bcols))


def matvec(m: Matrix, v: Vector) -> Vector:
    _same(m.field, v.field)
    if m.cols != len(v):
        raise ShapeMismatch(f"cannot apply {m.shape} matrix to length-{len(v)} vector")
    return Vector(m.field, tuple(_dot(m.field, r, v.entries) for r in m.row_lists()))


def scalar_mul(c: int | FieldElement, m: Matrix) -> Matrix:
    f = m.field
    c = c.index if isinstance(c, FieldElement) else c % f.q
    return Matrix(f, m.rows, m.cols, tuple(f.mul(c, e) for e in m.entries))


def add(a: Matrix, b: Matrix) -> Matrix:
    _same(a.field, b.field)
    if a.shape != b.shape:
        raise ShapeMismatch("matrix shapes differ")
    f = a.field
    return Matrix(f, a.rows, a.cols, tuple(f.add(x, y) for x, y in zip(a.entries, b.entries)))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return add(a, scalar_mul(a.field.neg(1), b))


def dot(u: Vector, v: Vector) -> int:
    _same(u.field, v.field)
    return _dot(u.field, u.entries, v.entries)


def rref(field: FieldSpec, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form of a copy of ``rows`` and its pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = field.neg(m[i][c])
                m[i] = [field.add(x, field.mul(factor, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(m: Matrix) -> int:
    return len(rref(m.field, m.row_lists())[1])


def rank_rows(field: FieldSpec, rows: list[list[int]]) -> int:
    return len(rref(field, rows)[1])


def kernel_rows(field: FieldSpec, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Right null space basis; one vector per free column, that column set to 1."""
    red, pivots = rref(field, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def kernel_basis(m: Matrix) -> list[Vector]:
    return [Vector(m.field, tuple(v)) for v in kernel_rows(m.field, m.row_lists(), m.cols)]


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ShapeMismatch("only square matrices are invertible")
    n, f = m.rows, m.field
    aug = [r + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.row_lists())]
    red, pivots = rref(f, aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return Matrix(f, n, n, tuple(x for r in red for x in r[n:]))


def determinant(m: Matrix) -> int:
    if m.rows != m.cols:
        raise ShapeMismatch("determinant needs a square matrix")
    f = m.field
    a = m.row_lists()
    n = m.rows
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = f.neg(det)
        det = f.mul(det, a[c][c])
        inv = f.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c]:
                factor = f.neg(f.mul(a[i][c], inv))
                a[i] = [f.add(x, f.mul(factor, y)) for x, y in zip(a[i], a[c])]
    return det


def solve(m: Matrix, b: Vector) -> Optional[Vector]:
    """A particular solution of m x = b with free variables 0, or ``None``."""
    _same(m.field, b.field)
    if m.rows != len(b):
        raise ShapeMismatch("right-hand side length must equal the row count")
    f = m.field
    aug = [r + [bi] for r, bi in zip(m.row_lists(), b.entries)]
    red, pivots = rref(f, aug)
    if m.cols in pivots:
        return None
    x = [0] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][m.cols]
    return Vector(f, tuple(x))
