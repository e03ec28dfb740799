"""Vectorized machinery behind group enumeration.

Group elements are stored as the tuple of vector indexes of the images of
the standard basis vectors (the columns of the matrix).  Every vector of
F^n is indexed lexicographically, first coordinate most significant.  With
all q^n vectors tabulated, form values become array lookups and applying a
group element to a vector is a gather.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionOutOfRange
from .gf import FieldSpec

MAX_VECTORS = 4096


def gf_matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over the field for index arrays (batched on leading axes)."""
    if field.k == 1:
        return (a.astype(np.int64) @ b.astype(np.int64)) % field.p
    add, mul = field.add_table, field.mul_table
    k = a.shape[-1]
    acc = np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
    for t in range(k):
        acc = add[acc, mul[a[..., :, t, None], b[..., None, t, :]]]
    return acc


def batched_rank_det(field: FieldSpec, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rank and determinant index of every matrix in a (B, n, n) stack."""
    add, mul = field.add_table, field.mul_table
    neg = np.asarray(field.neg_table)
    inv = np.asarray(field.inv_table)
    m = np.array(mats, dtype=np.int64, copy=True)
    batch, n, _ = m.shape
    used = np.zeros((batch, n), dtype=bool)
    rank = np.zeros(batch, dtype=np.int64)
    det = np.ones(batch, dtype=np.int64)
    pivot_rows = np.full((batch, n), -1, dtype=np.int64)
    ar = np.arange(batch)
    for c in range(n):
        cand = (m[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        r = np.argmax(cand, axis=1)
        piv = m[ar, r, c]
        det = np.where(has, mul[det, piv], 0)
        rank += has
        used[ar[has], r[has]] = True
        pivot_rows[has, c] = r[has]
        prow = m[ar, r, :]  # (B, n)
        # factor_i = -m[i, c] / pivot, applied to every row except the pivot row
        factor = mul[neg[m[:, :, c]], inv[np.where(has, piv, 1)][:, None]]
        factor[ar, r] = 0
        factor[~has] = 0
        m = add[m, mul[factor[:, :, None], prow[:, None, :]]]
    # sign of the permutation column -> pivot row for full-rank matrices
    full = rank == n
    pr = pivot_rows
    inversions = np.zeros(batch, dtype=np.int64)
    for a in range(n):
        for b in range(a + 1, n):
            inversions += pr[:, a] > pr[:, b]
    odd = full & (inversions % 2 == 1)
    det = np.where(odd, neg[det], det)
    return rank, det


class VectorSpace:
    """All q^n vectors of F^n together with the values of one form on them."""

    def __init__(self, field: FieldSpec, n: int):
        q = field.q
        if q**n > MAX_VECTORS:
            raise DimensionOutOfRange(f"q^n = {q**n} exceeds the tabulation bound {MAX_VECTORS}")
        self.field = field
        self.n = n
        self.size = q**n
        idx = np.arange(self.size)
        self.vectors = np.stack([(idx // q ** (n - 1 - i)) % q for i in range(n)], axis=1)
        self.weights = q ** np.arange(n - 1, -1, -1)

    def index_of(self, vecs: np.ndarray) -> np.ndarray:
        return (np.asarray(vecs) * self.weights).sum(axis=-1)

    def pair_table(self, gram: np.ndarray) -> np.ndarray:
        """table[u, v] = u^T gram v for all vector pairs."""
        vg = gf_matmul(self.field, self.vectors, gram)
        return gf_matmul(self.field, vg, self.vectors.T).astype(np.int32)

    def quadratic_values(self, upper: np.ndarray) -> np.ndarray:
        vu = gf_matmul(self.field, self.vectors, upper)  # (N, n)
        f = self.field
        if f.k == 1:
            return (vu * self.vectors).sum(axis=1) % f.p
        add, mul = f.add_table, f.mul_table
        prod = mul[vu, self.vectors]
        acc = np.zeros(self.size, dtype=np.int64)
        for i in range(self.n):
            acc = add[acc, prod[:, i]]
        return acc

    def apply(self, mats: np.ndarray) -> np.ndarray:
        """perm[g, v] = index of g v, for a (B, n, n) stack of matrices."""
        mats = np.asarray(mats, dtype=np.int64)
        out = np.empty((len(mats), self.size), dtype=np.int64)
        step = max(1, 2_000_000 // (self.size * self.n * self.n))
        vt = self.vectors.T  # (n, N)
        for s in range(0, len(mats), step):
            images = gf_matmul(self.field, mats[s:s + step], vt[None])  # (b, n, N)
            out[s:s + step] = self.index_of(np.transpose(images, (0, 2, 1)))
        return out


def backtrack_isometries(
    space: VectorSpace,
    pair: np.ndarray,
    values: np.ndarray,
    gram: np.ndarray,
    diag: Sequence[int],
    budget: int,
) -> np.ndarray:
    """All column tuples (w_0, .., w_{n-1}) with values[w_i] = diag[i] and pair[w_j, w_i] = gram[j, i].

    Linear independence of the images is implied by nonsingularity of the
    preserved form, which callers guarantee.
    """
    n = space.n
    base = [values == d for d in diag]
    out: list[np.ndarray] = []
    count = 0
    prefix: list[int] = []

    def extend(depth: int, mask: np.ndarray) -> None:
        nonlocal count
        cands = np.flatnonzero(mask)
        if depth == n - 1:
            if len(cands):
                count += len(cands)
                if count > budget:
                    raise BudgetExceeded(f"enumeration exceeded budget of {budget} elements")
                block = np.empty((len(cands), n), dtype=np.int64)
                block[:, :-1] = prefix
                block[:, -1] = cands
                out.append(block)
            return
        for w in cands:
            prefix.append(int(w))
            nxt = base[depth + 1].copy()
            for j, wj in enumerate(prefix):
                nxt &= pair[wj] == gram[j, depth + 1]
            extend(depth + 1, nxt)
            prefix.pop()

    extend(0, base[0])
    if not out:
        return np.empty((0, n), dtype=np.int64)
    return np.concatenate(out)


class ElementTable:
    """A finite set of invertible matrices, each stored as its column vector indexes.

    Rows are kept sorted by their integer key, which makes membership and
    product lookups a binary search.
    """

    def __init__(self, space: VectorSpace, cols: np.ndarray):
        self.space = space
        self.n = space.n
        cols = np.asarray(cols, dtype=np.int64).reshape(-1, space.n)
        keys = self._keys(cols)
        order = np.argsort(keys, kind="stable")
        self.cols = cols[order]
        self.keys = keys[order]
        if len(self.keys) > 1 and np.any(self.keys[1:] == self.keys[:-1]):
            uniq = np.concatenate([[True], self.keys[1:] != self.keys[:-1]])
            self.cols, self.keys = self.cols[uniq], self.keys[uniq]

    def _keys(self, cols: np.ndarray) -> np.ndarray:
        base = self.space.size
        if base ** self.n >= 2**63:
            raise DimensionOutOfRange("element keys would overflow 64 bits")
        w = base ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return (cols * w).sum(axis=-1)

    def __len__(self) -> int:
        return len(self.keys)

    def lookup(self, cols: np.ndarray) -> np.ndarray:
        """Row index of each column tuple, or -1 when absent."""
        keys = self._keys(np.asarray(cols, dtype=np.int64))
        pos = np.searchsorted(self.keys, keys)
        pos = np.clip(pos, 0, len(self.keys) - 1)
        return np.where(self.keys[pos] == keys, pos, -1)

    @cached_property
    def matrices(self) -> np.ndarray:
        """(B, n, n) entries; column i of element b is vectors[cols[b, i]]."""
        return np.transpose(self.space.vectors[self.cols], (0, 2, 1))

    @cached_property
    def perms(self) -> np.ndarray:
        return self.space.apply(self.matrices).astype(np.int32)

    @cached_property
    def identity_index(self) -> int:
        e = self.space.index_of(np.eye(self.n, dtype=np.int64))
        idx = int(self.lookup(e[None, :])[0])
        return idx

    def products_left(self, g: int, rows: Optional[np.ndarray] = None) -> np.ndarray:
        """Column tuples of g * h for h in ``rows`` (all elements by default)."""
        hc = self.cols if rows is None else self.cols[rows]
        return self.perms[g][hc]

    @cached_property
    def inverses(self) -> np.ndarray:
        out = np.empty(len(self), dtype=np.int64)
        ident = self.identity_index
        for g in range(len(self)):
            prod = self.lookup(self.products_left(g))
            out[g] = int(np.flatnonzero(prod == ident)[0])
        return out

    def is_closed(self) -> bool:
        for g in range(len(self)):
            if np.any(self.lookup(self.products_left(g)) < 0):
                return False
        return True


def closure(space: VectorSpace, generators: np.ndarray, budget: int) -> np.ndarray:
    """Column tuples of the group generated by the given matrices (breadth first)."""
    n = space.n
    gens = np.asarray(generators, dtype=np.int64).reshape(-1, n, n)
    ident = space.index_of(np.eye(n, dtype=np.int64))[None, :]
    if len(gens) == 0:
        return ident
    gperm = space.apply(gens)
    base = space.size
    w = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    seen = {int((ident[0] * w).sum())}
    frontier = ident
    found = [ident]
    while len(frontier):
        new_blocks = []
        for p in gperm:
            prod = p[frontier]
            keys = (prod * w).sum(axis=1)
            keys, first = np.unique(keys, return_index=True)
            fresh = [i for i, k in zip(first, keys.tolist()) if k not in seen]
            if fresh:
                seen.update(int(k) for k in (prod[fresh] * w).sum(axis=1))
                new_blocks.append(prod[fresh])
                if len(seen) > budget:
                    raise BudgetExceeded(f"closure exceeded budget of {budget} elements")
        frontier = np.concatenate(new_blocks) if new_blocks else np.empty((0, n), dtype=np.int64)
        if len(frontier):
            found.append(frontier)
    return np.concatenate(found)


def matrix_to_cols(space: VectorSpace, mat: Iterable[Iterable[int]]) -> np.ndarray:
    m = np.asarray(mat, dtype=np.int64)
    return space.index_of(m.T)
