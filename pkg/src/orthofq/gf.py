"""Exact arithmetic in GF(p^k).

An element is the residue of a polynomial over GF(p) modulo a fixed monic
irreducible ``modulus`` of degree ``k``.  Elements are identified with their
canonical integer index ``sum(c[i] * p**i)`` where ``c`` is the coefficient
vector, constant term first.  Internally every field operation works on these
indices; :class:`FieldElement` is a thin typed wrapper for the public API.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import (
    CompositeP,
    DegreeOutOfRange,
    DivisionByZero,
    FieldMismatch,
    OddCharacteristic,
    ReducibleModulus,
)

DEFAULT_MAX_ORDER = 2**20
# full q x q operation tables are only materialized for small fields
TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists with constant term first ------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    r = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        c = r[-1]
        shift = len(r) - 1 - dm
        for i, mc in enumerate(m):
            r[shift + i] = (r[shift + i] - c * mc) % p
        _trim(r)
    return r


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p: int, deg: int) -> Iterator[list[int]]:
    for m in range(p**deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(m % p)
            m //= p
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division against every monic polynomial of degree <= deg/2."""
    poly = _trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for div in _monic_polys(p, d):
            if not _poly_mod(poly, div, p):
                return False
    return True


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, comparing coefficients from x^(k-1) down."""
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class SquareClass(enum.Enum):
    ZERO = "zero"
    SQUARE = "square"
    NONSQUARE = "nonsquare"

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if not isinstance(other, SquareClass):
            return NotImplemented
        if self is SquareClass.ZERO or other is SquareClass.ZERO:
            return SquareClass.ZERO
        if self is other:
            return SquareClass.SQUARE
        return SquareClass.NONSQUARE

    @property
    def sign(self) -> int:
        """+1 for squares, -1 for non-squares, 0 for zero."""
        return {"zero": 0, "square": 1, "nonsquare": -1}[self.value]


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^k) with a fixed monic irreducible modulus.

    Field operations on canonical indices are exposed as methods
    (``add``, ``mul``, ...) so that matrix code never has to allocate
    :class:`FieldElement` wrappers.
    """

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {self.k}")
        if not is_irreducible(self.modulus, self.p):
            raise ReducibleModulus(f"modulus {list(self.modulus)} is reducible over GF({self.p})")

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    @cached_property
    def q(self) -> int:
        return self.p**self.k

    @property
    def char2(self) -> bool:
        return self.p == 2

    # -- index <-> coefficients ---------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        reduced = _poly_mod(coeffs, self.modulus, self.p) if len(coeffs) > self.k else coeffs
        idx = 0
        for c in reversed(list(reduced)):
            idx = idx * self.p + (c % self.p)
        return idx

    def _mul_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = _poly_mul(_trim(list(self.coeffs(a))), _trim(list(self.coeffs(b))), self.p)
        return self.from_coeffs(_poly_mod(prod, self.modulus, self.p))

    # -- cached tables --------------------------------------------------------

    @cached_property
    def _exp_log(self) -> tuple[list[int], list[int]]:
        q = self.q
        exps = [(q - 1) // r for r in _prime_factors(q - 1)]
        for g in range(1, q):
            if q == 2 or all(self._pow_slow(g, e) != 1 for e in exps):
                break
        exp = [0] * (q - 1)
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        return exp, log

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.q
        if q > TABLE_LIMIT:
            raise MemoryError(f"operation tables not built for q={q} > {TABLE_LIMIT}")
        idx = np.arange(q)
        if self.k == 1:
            return (idx[:, None] + idx[None, :]) % self.p
        if self.p == 2:
            return idx[:, None] ^ idx[None, :]
        digits = np.array([self.coeffs(a) for a in range(q)])
        s = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.k)
        return (s * weights).sum(axis=-1)

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        if q > TABLE_LIMIT:
            raise MemoryError(f"operation tables not built for q={q} > {TABLE_LIMIT}")
        return np.array([[self.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)

    @cached_property
    def neg_table(self) -> list[int]:
        return [self._neg(a) for a in range(self.q)]

    @cached_property
    def inv_table(self) -> list[int]:
        exp, log = self._exp_log
        n = self.q - 1
        return [0] + [exp[(-log[a]) % n] for a in range(1, self.q)]

    # -- index arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.from_coeffs([x + y for x, y in zip(ca, cb)])

    def _neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_coeffs([-c for c in self.coeffs(a)])

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg_table[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        exp, log = self._exp_log
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        exp, log = self._exp_log
        return exp[(log[a] * e) % (self.q - 1)]

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    @cached_property
    def nonsquare(self) -> int:
        """Smallest-index non-residue (odd characteristic only)."""
        if self.p == 2:
            raise OddCharacteristic("every element of a characteristic-2 field is a square")
        return next(a for a in range(1, self.q) if not self.is_square(a))

    def sqrt(self, a: int) -> Optional[int]:
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        exp, log = self._exp_log
        e = log[a]
        if e % 2:
            return None
        r = exp[e // 2]
        return min(r, self.neg(r))

    @cached_property
    def _artin_schreier(self) -> dict[int, int]:
        if self.p != 2:
            raise OddCharacteristic("Artin-Schreier map u^2 + u is only used in characteristic 2")
        table: dict[int, int] = {}
        for u in range(self.q):
            table.setdefault(self.add(self.mul(u, u), u), u)
        return table

    @property
    def artin_schreier_image(self) -> frozenset[int]:
        """The additive subgroup U = {u^2 + u}."""
        return frozenset(self._artin_schreier)

    def elements(self) -> range:
        return range(self.q)

    def element(self, index: int) -> "FieldElement":
        return FieldElement(self, index)

    def descriptor(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


@functools.lru_cache(maxsize=None)
def _make_field(p: int, k: int) -> FieldSpec:
    return FieldSpec(p, k, canonical_modulus(p, k))


def make_field(p: int, k: int = 1, *, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    """Return GF(p^k) with the canonical (lexicographically smallest) modulus."""
    if not is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if k < 1 or p**k > max_order:
        raise DegreeOutOfRange(f"need 1 <= k and p^k <= {max_order}, got p={p}, k={k}")
    return _make_field(p, k)


def field_from_descriptor(desc: dict, *, allow_custom_modulus: bool = False) -> FieldSpec:
    p, k = int(desc["p"]), int(desc.get("k", 1))
    field = make_field(p, k)
    modulus = desc.get("modulus")
    if modulus is None or tuple(modulus) == field.modulus:
        return field
    if not allow_custom_modulus:
        raise ReducibleModulus(
            f"modulus {modulus} differs from canonical {list(field.modulus)}; "
            "pass --allow-custom-modulus to use it"
        )
    return FieldSpec(p, k, tuple(int(c) for c in modulus))


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific field, identified by its canonical index."""

    field: FieldSpec
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < self.field.q:
            raise ValueError(f"index {self.index} out of range for {self.field!r}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.index)

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"{self.field!r}[{self.index}]"

    def _other(self, other: object) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.index
        if isinstance(other, int):
            # integers embed through the prime subfield
            return other % self.field.p
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other: object) -> "FieldElement":
        return FieldElement(self.field, self.field.add(self.index, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other: object) -> "FieldElement":
        return FieldElement(self.field, self.field.sub(self.index, self._other(other)))

    def __rsub__(self, other: object) -> "FieldElement":
        return FieldElement(self.field, self.field.sub(self._other(other), self.index))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.index))

    def __mul__(self, other: object) -> "FieldElement":
        return FieldElement(self.field, self.field.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "FieldElement":
        return FieldElement(self.field, self.field.div(self.index, self._other(other)))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow(self.index, e))

    def __bool__(self) -> bool:
        return self.index != 0


def _check_same(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    return a.field


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_same(a, b)
    return FieldElement(f, f.add(a.index, b.index))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_same(a, b)
    return FieldElement(f, f.sub(a.index, b.index))


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_same(a, b)
    return FieldElement(f, f.mul(a.index, b.index))


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.inv(a.index))


def power(a: FieldElement, e: int) -> FieldElement:
    """Square-and-multiply on the polynomial representation."""
    f = a.field
    if e < 0:
        a, e = inv(a), -e
    result, base = 1, a.index
    while e:
        if e & 1:
            result = f._mul_slow(result, base)
        base = f._mul_slow(base, base)
        e >>= 1
    return FieldElement(f, result)


def square_class(a: FieldElement) -> SquareClass:
    if a.index == 0:
        return SquareClass.ZERO
    return SquareClass.SQUARE if a.field.is_square(a.index) else SquareClass.NONSQUARE


def sqrt(a: FieldElement) -> Optional[FieldElement]:
    """A square root of ``a``, the one with the smaller index; ``None`` for non-squares."""
    r = a.field.sqrt(a.index)
    return None if r is None else FieldElement(a.field, r)


def artin_schreier_solve(c: FieldElement) -> Optional[FieldElement]:
    """Smallest-index solution of x^2 + x = c, or ``None``."""
    if c.field.p != 2:
        raise OddCharacteristic("artin_schreier_solve requires characteristic 2")
    lam = c.field._artin_schreier.get(c.index)
    return None if lam is None else FieldElement(c.field, lam)


def arf_residue(c: FieldElement) -> int:
    """0 if c lies in U = {u^2 + u}, else 1."""
    if c.field.p != 2:
        raise OddCharacteristic("arf_residue requires characteristic 2")
    return 0 if c.index in c.field._artin_schreier else 1


def elements(field: FieldSpec) -> list[FieldElement]:
    return [FieldElement(field, i) for i in range(field.q)]
