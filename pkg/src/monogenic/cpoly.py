"""Polynomials on R^{n+1} with Clifford coefficients.

Variables are ``x0, x1, ..., xn``; exponents are tuples of length ``n+1``.
Coefficients multiply from the left, so ``e1 * x0`` is stored as
``{(1, 0): e1}``.  The Dirac operator is ``D = sum_i e_i d/dx_i`` with
``e_0 = 1``.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb, factorial, prod, sqrt
from typing import Mapping, Sequence

import numpy as np

from .clifford import Multivector, blade_name, DimensionMismatch
from .numerics import OperatorStencil, StencilTerm

DEGREE_CAP = 12
MONOGENIC_TOL = 1e-10


class DegreeCapError(ValueError):
    pass


class NotMonogenicError(ValueError):
    pass


def multi_factorial(k: Sequence[int]) -> int:
    return prod(factorial(int(i)) for i in k)


def multi_indices(n: int, max_degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of length ``n`` with total degree <= ``max_degree``.

    Ordered by total degree, then reverse-lexicographically within a degree.
    """
    def exact(d: int, slots: int):
        if slots == 0:
            if d == 0:
                yield ()
            return
        if slots == 1:
            yield (d,)
            return
        for e in range(d, -1, -1):
            for rest in exact(d - e, slots - 1):
                yield (e,) + rest

    return [k for d in range(max_degree + 1) for k in exact(d, n)]


class CliffPoly:
    """Sparse polynomial with :class:`Multivector` coefficients."""

    __slots__ = ("n", "cap", "_t")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], Multivector] | None = None,
                 cap: int = DEGREE_CAP):
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n + 1 or min(exps) < 0:
                raise ValueError(f"bad exponent {exps} for n={n}")
            if not isinstance(coeff, Multivector):
                coeff = Multivector.scalar(n, coeff)
            elif coeff.n != n:
                raise DimensionMismatch("coefficient dimension differs from polynomial")
            if sum(exps) > cap:
                raise DegreeCapError(f"degree {sum(exps)} exceeds cap {cap}")
            if coeff.coeffs:
                clean[exps] = coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "_t", clean)

    def __setattr__(self, name, value):
        raise AttributeError("CliffPoly is immutable")

    @classmethod
    def constant(cls, n: int, value=1.0, cap: int = DEGREE_CAP) -> "CliffPoly":
        return cls(n, {(0,) * (n + 1): value}, cap=cap)

    @classmethod
    def variable(cls, n: int, i: int, cap: int = DEGREE_CAP) -> "CliffPoly":
        exps = [0] * (n + 1)
        exps[i] = 1
        return cls(n, {tuple(exps): 1.0}, cap=cap)

    @property
    def terms(self) -> dict[tuple[int, ...], Multivector]:
        return dict(self._t)

    def degree(self) -> int:
        return max((sum(e) for e in self._t), default=0)

    def max_abs_coeff(self) -> float:
        return max((c.max_abs() for c in self._t.values()), default=0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.max_abs_coeff() <= tol

    def with_cap(self, cap: int) -> "CliffPoly":
        return CliffPoly(self.n, self._t, cap=cap)

    def _check(self, other: "CliffPoly"):
        if other.n != self.n:
            raise DimensionMismatch(f"n={self.n} vs n={other.n}")

    def __add__(self, other):
        if not isinstance(other, CliffPoly):
            other = CliffPoly.constant(self.n, other, cap=self.cap)
        self._check(other)
        out = dict(self._t)
        for e, c in other._t.items():
            out[e] = out[e] + c if e in out else c
        return CliffPoly(self.n, out, cap=max(self.cap, other.cap))

    __radd__ = __add__

    def __neg__(self):
        return CliffPoly(self.n, {e: -c for e, c in self._t.items()}, cap=self.cap)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffPoly):
            return poly_mul(self, other)
        if isinstance(other, (Multivector, int, float, complex, np.number)):
            return CliffPoly(self.n, {e: c * other for e, c in self._t.items()}, cap=self.cap)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Multivector, int, float, complex, np.number)):
            return CliffPoly(self.n, {e: other * c for e, c in self._t.items()}, cap=self.cap)
        return NotImplemented

    def __truediv__(self, other):
        return self * (1.0 / other)

    def allclose(self, other: "CliffPoly", atol: float = 1e-12) -> bool:
        return (self - other).max_abs_coeff() <= atol

    def restrict(self) -> "CliffPoly":
        """Restriction to the hyperplane ``x0 = 0``."""
        return CliffPoly(self.n, {e: c for e, c in self._t.items() if e[0] == 0}, cap=self.cap)

    def truncate(self, max_degree: int) -> "CliffPoly":
        return CliffPoly(self.n, {e: c for e, c in self._t.items() if sum(e) <= max_degree},
                         cap=self.cap)

    # evaluation ---------------------------------------------------------
    def _arrays(self):
        exps = np.array(list(self._t.keys()), dtype=int).reshape(len(self._t), self.n + 1)
        coeffs = np.array([c.to_array() for c in self._t.values()],
                          dtype=complex).reshape(len(self._t), 1 << self.n)
        return exps, coeffs

    def evaluate(self, points) -> np.ndarray:
        """Values at ``points`` of shape ``(P, n+1)`` as an array ``(P, 2**n)``."""
        pts = np.atleast_2d(np.asarray(points))
        out = np.zeros((pts.shape[0], 1 << self.n), dtype=complex)
        if not self._t:
            return out
        exps, coeffs = self._arrays()
        top = int(exps.max()) if exps.size else 0
        powers = np.ones((top + 1,) + pts.shape, dtype=pts.dtype if np.iscomplexobj(pts) else float)
        for d in range(1, top + 1):
            powers[d] = powers[d - 1] * pts
        mono = np.ones((pts.shape[0], len(exps)), dtype=powers.dtype)
        for i in range(self.n + 1):
            mono = mono * powers[exps[:, i], :, i].T
        return mono @ coeffs

    def __call__(self, point) -> Multivector:
        return Multivector.from_array(self.n, self.evaluate(np.asarray(point)[None, :])[0])

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e in sorted(self._t, key=lambda e: (sum(e), e)):
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            coeff = " + ".join(f"({v.real:.12g}{v.imag:+.12g}j){blade_name(b)}"
                               for b, v in sorted(self._t[e].coeffs.items()))
            parts.append(f"[{coeff}]" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"CliffPoly(n={self.n}, {self})"


def poly_mul(p: CliffPoly, q: CliffPoly) -> CliffPoly:
    p._check(q)
    cap = max(p.cap, q.cap)
    out: dict[tuple[int, ...], Multivector] = {}
    for ep, cp in p._t.items():
        for eq, cq in q._t.items():
            e = tuple(a + b for a, b in zip(ep, eq))
            if sum(e) > cap:
                raise DegreeCapError(f"product degree {sum(e)} exceeds cap {cap}")
            c = cp * cq
            out[e] = out[e] + c if e in out else c
    return CliffPoly(p.n, out, cap=cap)


def poly_diff(p: CliffPoly, var: int) -> CliffPoly:
    if not 0 <= var <= p.n:
        raise ValueError(f"variable x{var} not in 0..{p.n}")
    out = {}
    for e, c in p._t.items():
        if e[var]:
            ne = list(e)
            ne[var] -= 1
            out[tuple(ne)] = c * e[var]
    return CliffPoly(p.n, out, cap=p.cap)


def _spatial_dirac(p: CliffPoly) -> CliffPoly:
    n = p.n
    acc = CliffPoly(n, cap=p.cap)
    for j in range(1, n + 1):
        acc = acc + Multivector.basis(n, j) * poly_diff(p, j)
    return acc


def dirac_apply(p: CliffPoly) -> CliffPoly:
    return poly_diff(p, 0) + _spatial_dirac(p)


def is_monogenic(p: CliffPoly, tol: float = MONOGENIC_TOL) -> bool:
    return dirac_apply(p).max_abs_coeff() <= tol


def ck_extend(p: CliffPoly) -> CliffPoly:
    """Monogenic extension of a polynomial given on ``x0 = 0``.

    Sums ``(-x0)^k / k! * (sum_j e_j d_j)^k p``; the series stops once the
    spatial Dirac operator has exhausted the degree of ``p``.
    """
    if any(e[0] for e in p._t):
        raise ValueError("ck_extend expects a polynomial independent of x0")
    n = p.n
    out: dict[tuple[int, ...], Multivector] = {}
    term = p
    k = 0
    while term._t:
        scale = (-1.0) ** k / factorial(k)
        for e, c in term._t.items():
            ne = (e[0] + k,) + e[1:]
            cc = c * scale
            out[ne] = out[ne] + cc if ne in out else cc
        term = _spatial_dirac(term)
        k += 1
    return CliffPoly(n, out, cap=p.cap)


def ck_product(f: CliffPoly, g: CliffPoly, tol: float = MONOGENIC_TOL) -> CliffPoly:
    """Monogenic function equal to ``f*g`` on the hyperplane ``x0 = 0``."""
    for name, h in (("f", f), ("g", g)):
        resid = dirac_apply(h).max_abs_coeff()
        if resid > tol:
            raise NotMonogenicError(f"{name} is not monogenic (Dirac residual {resid:.3g})")
    return ck_extend(poly_mul(f.restrict(), g.restrict()))


def spatial_monomial(k: Sequence[int], coeff=1.0, cap: int = DEGREE_CAP) -> CliffPoly:
    n = len(k)
    return CliffPoly(n, {(0,) + tuple(k): coeff}, cap=cap)


@lru_cache(maxsize=4096)
def _v_monomial(k: tuple[int, ...], cap: int) -> CliffPoly:
    return ck_extend(spatial_monomial(k, 1.0 / sqrt(multi_factorial(k)), cap=cap))


def v_monomial(k: Sequence[int], cap: int = DEGREE_CAP) -> CliffPoly:
    """Monogenic monomial whose restriction to ``x0 = 0`` is ``x^k / sqrt(k!)``."""
    k = tuple(int(i) for i in k)
    if min(k, default=0) < 0:
        raise ValueError("negative exponent")
    if sum(k) > cap:
        raise DegreeCapError(f"|k|={sum(k)} exceeds cap {cap}")
    return _v_monomial(k, cap)


def monogenic_variable(n: int, j: int, cap: int = DEGREE_CAP) -> CliffPoly:
    """``x_j - e_j x0``, the monogenic extension of ``x_j``."""
    k = [0] * n
    k[j - 1] = 1
    return v_monomial(k, cap=cap)


def exp_series(u: Sequence[complex], max_degree: int, cap: int | None = None) -> CliffPoly:
    """Truncated monogenic extension of ``exp(u . x)``: ``sum u^k/sqrt(k!) V_k``."""
    u = np.asarray(u, dtype=complex)
    n = len(u)
    cap = max_degree if cap is None else cap
    acc: dict[tuple[int, ...], Multivector] = {}
    for k in multi_indices(n, max_degree):
        w = complex(np.prod(u ** np.array(k))) / sqrt(multi_factorial(k))
        if w == 0:
            continue
        for e, c in v_monomial(k, cap=cap)._t.items():
            cc = c * w
            acc[e] = acc[e] + cc if e in acc else cc
    return CliffPoly(n, acc, cap=cap)


def mono_exp(u: Sequence[float], x: Sequence[float]) -> Multivector:
    """Monogenic exponential ``E(u, x)`` at a single point ``x = (x0, ..., xn)``."""
    u = np.asarray(u, dtype=float)
    n = len(u)
    vals = mono_exp_array(u, np.asarray(x, dtype=float)[None, :])
    return Multivector.from_array(n, vals[0])


def mono_exp_array(u: Sequence[float], points: np.ndarray) -> np.ndarray:
    """Vectorised ``E(u, x)`` at ``points`` of shape ``(P, n+1)``; returns ``(P, 2**n)``."""
    u = np.asarray(u, dtype=float)
    n = len(u)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    x0 = pts[:, 0]
    growth = np.exp(pts[:, 1:] @ u)
    out = np.zeros((pts.shape[0], 1 << n), dtype=complex)
    norm = float(np.linalg.norm(u))
    if norm == 0.0:
        out[:, 0] = growth
        return out
    out[:, 0] = growth * np.cos(norm * x0)
    s = growth * np.sin(norm * x0) / norm
    for j in range(n):
        out[:, 1 << j] = -u[j] * s
    return out


def poly_shift(p: CliffPoly, c: Sequence[float]) -> CliffPoly:
    """Substitute ``x_j -> x_j + c_j`` for ``j >= 1``; ``x0`` is untouched."""
    c = list(c)
    if len(c) != p.n:
        raise ValueError("shift vector has wrong length")
    out: dict[tuple[int, ...], Multivector] = {}
    for e, coeff in p._t.items():
        partial = {(e[0],): coeff}
        for j in range(1, p.n + 1):
            nxt = {}
            for pre, cc in partial.items():
                for i in range(e[j] + 1):
                    w = comb(e[j], i) * c[j - 1] ** (e[j] - i)
                    if w == 0:
                        continue
                    key = pre + (i,)
                    val = cc * w
                    nxt[key] = nxt[key] + val if key in nxt else val
            partial = nxt
        for key, val in partial.items():
            out[key] = out[key] + val if key in out else val
    return CliffPoly(p.n, out, cap=p.cap)


def dirac_stencil(n: int):
    """Finite-difference form of ``D = sum_i e_i d/dx_i`` on R^{n+1}."""
    terms = [StencilTerm(0, 1.0, 1)]
    terms += [StencilTerm(j, Multivector.basis(n, j), 1) for j in range(1, n + 1)]
    return OperatorStencil(tuple(terms), "dirac")
