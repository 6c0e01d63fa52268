"""Complexified Clifford algebra Cl(0,n).

Basis blades are encoded as integer bitmasks: bit ``j-1`` set means the
generator ``e_j`` is present, so ``0`` is the scalar unit and ``0b11`` is
``e1e2``.  Generators square to ``-1``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

import numpy as np

MAX_DIM = 12
SYM_PRODUCT_CAP = 10


class DimensionMismatch(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def blade_grade(blade: int) -> int:
    return _popcount(blade)


@lru_cache(maxsize=None)
def blade_sign(a: int, b: int) -> int:
    """Sign of the product of basis blades ``a`` and ``b``.

    Counts the transpositions needed to sort the concatenated generator
    string, then applies ``e_j e_j = -1`` for every shared generator.
    """
    swaps = 0
    rest = a >> 1
    while rest:
        swaps += _popcount(rest & b)
        rest >>= 1
    sign = -1 if swaps & 1 else 1
    if _popcount(a & b) & 1:
        sign = -sign
    return sign


def blade_name(blade: int) -> str:
    if blade == 0:
        return "1"
    return "".join(f"e{j + 1}" for j in range(MAX_DIM) if blade >> j & 1)


def conj_sign(grade: int) -> int:
    return -1 if (grade * (grade + 1) // 2) % 2 else 1


@lru_cache(maxsize=None)
def product_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(signs, targets) with ``e_A e_B = signs[A, B] * e_{targets[A, B]}``."""
    size = 1 << n
    a = np.arange(size)[:, None]
    b = np.arange(size)[None, :]
    targets = a ^ b
    signs = np.array([[blade_sign(i, j) for j in range(size)] for i in range(size)],
                     dtype=float)
    signs.setflags(write=False)
    targets.setflags(write=False)
    return signs, targets


@lru_cache(maxsize=None)
def conj_signs(n: int) -> np.ndarray:
    out = np.array([conj_sign(blade_grade(b)) for b in range(1 << n)], dtype=float)
    out.setflags(write=False)
    return out


def array_product(A: np.ndarray, B: np.ndarray, n: int) -> np.ndarray:
    """Pointwise geometric product of coefficient arrays of shape ``(..., 2**n)``."""
    signs, targets = product_table(n)
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    shape = np.broadcast_shapes(A.shape, B.shape)
    out = np.zeros(shape, dtype=complex)
    for i in range(1 << n):
        a_i = A[..., i:i + 1]
        if not np.any(a_i):
            continue
        out[..., targets[i]] += signs[i] * a_i * B
    return out


def array_conjugate(A: np.ndarray, n: int) -> np.ndarray:
    return np.conj(A) * conj_signs(n)


class Multivector:
    """Element of the complexified Cl(0,n), stored as a sparse blade map.

    Instances are immutable.  Arithmetic with plain numbers treats them as
    scalars; combining multivectors of different dimension raises.
    """

    __slots__ = ("n", "_c")

    def __init__(self, n: int, coeffs: Mapping[int, complex] | None = None):
        if not 0 <= n <= MAX_DIM:
            raise ValueError(f"dimension {n} outside 0..{MAX_DIM}")
        size = 1 << n
        clean = {}
        for blade, value in (coeffs or {}).items():
            if not 0 <= blade < size:
                raise ValueError(f"blade {blade} not in Cl(0,{n})")
            value = complex(value)
            if not (np.isfinite(value.real) and np.isfinite(value.imag)):
                raise ValueError("non-finite coefficient")
            if value != 0:
                clean[blade] = value
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_c", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # construction -----------------------------------------------------
    @classmethod
    def scalar(cls, n: int, value: complex = 1.0) -> "Multivector":
        return cls(n, {0: value})

    @classmethod
    def basis(cls, n: int, *generators: int) -> "Multivector":
        """Product ``e_{g1} e_{g2} ...`` of generators (1-based, any order)."""
        out = cls.scalar(n)
        for g in generators:
            if not 1 <= g <= n:
                raise ValueError(f"generator e{g} not in Cl(0,{n})")
            out = out * cls(n, {1 << (g - 1): 1.0})
        return out

    @classmethod
    def vector(cls, components: Sequence[complex]) -> "Multivector":
        n = len(components)
        return cls(n, {1 << j: c for j, c in enumerate(components)})

    @classmethod
    def from_array(cls, n: int, values: np.ndarray) -> "Multivector":
        return cls(n, {b: v for b, v in enumerate(np.asarray(values)) if v != 0})

    # access -------------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, complex]:
        return dict(self._c)

    def __getitem__(self, blade: int) -> complex:
        return self._c.get(blade, 0j)

    @property
    def scalar_part(self) -> complex:
        return self._c.get(0, 0j)

    def to_array(self) -> np.ndarray:
        out = np.zeros(1 << self.n, dtype=complex)
        for b, v in self._c.items():
            out[b] = v
        return out

    def grade_part(self, r: int) -> "Multivector":
        return Multivector(self.n, {b: v for b, v in self._c.items() if blade_grade(b) == r})

    def max_abs(self) -> float:
        return max((abs(v) for v in self._c.values()), default=0.0)

    def is_scalar(self) -> bool:
        return all(b == 0 for b in self._c)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            if other.n != self.n:
                raise DimensionMismatch(f"Cl(0,{self.n}) vs Cl(0,{other.n})")
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return Multivector.scalar(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for b, v in other._c.items():
            out[b] = out.get(b, 0) + v
        return Multivector(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.n, {b: -v for b, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Multivector(self.n, {b: v * other for b, v in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mv_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Multivector(self.n, {b: other * v for b, v in self._c.items()})
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Multivector(self.n, {b: v / other for b, v in self._c.items()})
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, float, complex)):
            other = Multivector.scalar(self.n, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.n == other.n and self._c == other._c

    def __hash__(self):
        return hash((self.n, frozenset(self._c.items())))

    def allclose(self, other, atol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= atol

    def conj(self) -> "Multivector":
        return mv_conjugate(self)

    def __repr__(self):
        if not self._c:
            return f"Multivector({self.n}, 0)"
        terms = " + ".join(f"({v:.6g})*{blade_name(b)}" for b, v in sorted(self._c.items()))
        return f"Multivector({self.n}, {terms})"


def mv_product(a: Multivector, b: Multivector) -> Multivector:
    if a.n != b.n:
        raise DimensionMismatch(f"Cl(0,{a.n}) vs Cl(0,{b.n})")
    out: dict[int, complex] = {}
    for ba, va in a._c.items():
        for bb, vb in b._c.items():
            target = ba ^ bb
            out[target] = out.get(target, 0) + blade_sign(ba, bb) * va * vb
    return Multivector(a.n, out)


def mv_conjugate(a: Multivector) -> Multivector:
    """Clifford conjugation combined with complex conjugation of coefficients."""
    return Multivector(a.n, {b: conj_sign(blade_grade(b)) * np.conj(v)
                             for b, v in a._c.items()})


def sym_product(factors: Sequence[Multivector]) -> Multivector:
    """Average of the geometric products over all orderings of ``factors``.

    Repeat a factor to express powers, e.g. ``a^2 x b`` is
    ``sym_product([a, a, b])``.  The sum over orderings is accumulated
    exactly over subsets: the total for a set ``S`` is the sum, over its
    possible last factors ``j``, of the total for ``S - {j}`` times ``a_j``.
    """
    k = len(factors)
    if k == 0:
        raise ValueError("sym_product needs at least one factor")
    if k > SYM_PRODUCT_CAP:
        raise ValueError(f"sym_product capped at {SYM_PRODUCT_CAP} factors, got {k}")
    n = factors[0].n
    for f in factors:
        if f.n != n:
            raise DimensionMismatch("factors live in different algebras")
    totals = {0: Multivector.scalar(n)}
    for mask in range(1, 1 << k):
        acc = Multivector(n)
        for j in range(k):
            if mask >> j & 1:
                acc = acc + totals[mask ^ (1 << j)] * factors[j]
        totals[mask] = acc
    return totals[(1 << k) - 1] / factorial(k)


def sym_product_bruteforce(factors: Sequence[Multivector]) -> Multivector:
    """Direct enumeration of ``k!`` orderings; reference for small ``k``."""
    n = factors[0].n
    acc = Multivector(n)
    perms = list(itertools.permutations(factors))
    for perm in perms:
        prod = Multivector.scalar(n)
        for f in perm:
            prod = prod * f
        acc = acc + prod
    return acc / len(perms)


def generators(n: int) -> list[Multivector]:
    return [Multivector.basis(n, j) for j in range(1, n + 1)]


def from_span(value: complex, n: int, j: int) -> Multivector:
    """Identify ``a + b*i`` with ``a + b*e_j`` in the subalgebra span{1, e_j}."""
    value = complex(value)
    return Multivector(n, {0: value.real, 1 << (j - 1): value.imag})


def sum_multivectors(items: Iterable[Multivector], n: int) -> Multivector:
    acc = Multivector(n)
    for item in items:
        acc = acc + item
    return acc
