"""Sparse multi-index -> complex coefficient maps over an orthonormal basis."""
from __future__ import annotations

from typing import Iterator, Mapping

import numpy as np


class SparseCoeffs:
    """Finite linear combination of an orthonormal basis indexed by multi-indices.

    Subclasses fix which basis is meant (Hermite functions, Bargmann
    monomials, monogenic ``V_k``); arithmetic never mixes subclasses.
    """

    __slots__ = ("n", "_c")

    def __init__(self, n: int, coeffs: Mapping[tuple[int, ...], complex] | None = None):
        clean = {}
        for k, v in (coeffs or {}).items():
            k = tuple(int(i) for i in k)
            if len(k) != n or min(k, default=0) < 0:
                raise ValueError(f"bad multi-index {k} for n={n}")
            v = complex(v)
            if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                raise ValueError("non-finite coefficient")
            if v != 0:
                clean[k] = clean.get(k, 0) + v
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_c", clean)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def basis(cls, m: tuple[int, ...], value: complex = 1.0, **kw):
        return cls(len(m), {tuple(m): value}, **kw)

    def _new(self, coeffs):
        return type(self)(self.n, coeffs)

    @property
    def coeffs(self) -> dict[tuple[int, ...], complex]:
        return dict(self._c)

    def __getitem__(self, k) -> complex:
        return self._c.get(tuple(k), 0j)

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], complex]]:
        return iter(sorted(self._c.items()))

    def __len__(self):
        return len(self._c)

    def degree(self) -> int:
        return max((sum(k) for k in self._c), default=0)

    def _same(self, other):
        if type(other) is not type(self) or other.n != self.n:
            raise TypeError(f"cannot combine {type(self).__name__}(n={self.n}) "
                            f"with {type(other).__name__}")

    def __add__(self, other):
        self._same(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({k: -v for k, v in self._c.items()})

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float, complex, np.number)):
            return NotImplemented
        return self._new({k: v * scalar for k, v in self._c.items()})

    __rmul__ = __mul__

    def inner(self, other) -> complex:
        """Coefficient contraction ``sum conj(a_k) b_k``."""
        self._same(other)
        return complex(sum(np.conj(v) * other._c.get(k, 0) for k, v in self._c.items()))

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(v) ** 2 for v in self._c.values())))

    def max_abs_diff(self, other) -> float:
        diff = self - other
        return max((abs(v) for v in diff._c.values()), default=0.0)

    def truncate(self, max_degree: int):
        return self._new({k: v for k, v in self._c.items() if sum(k) <= max_degree})

    def __eq__(self, other):
        return type(other) is type(self) and self.n == other.n and self._c == other._c

    def __hash__(self):
        return hash((type(self).__name__, self.n, frozenset(self._c.items())))

    def __repr__(self):
        body = ", ".join(f"{k}: {v:.6g}" for k, v in sorted(self._c.items()))
        return f"{type(self).__name__}(n={self.n}, {{{body}}})"
