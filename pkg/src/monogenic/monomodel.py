"""The monogenic model M^2 of the Heisenberg group.

Elements are stored by their coefficients in the ``V_k`` basis and realized
as :class:`~monogenic.cpoly.CliffPoly` on demand.  A monogenic polynomial is
determined by its restriction to ``x0 = 0``, so most operations are done on
scalar restriction polynomials (plain ``{exponent: complex}`` maps) and the
result read back in the ``V_k`` basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt
from typing import Callable, Sequence

import numpy as np

from .clifford import Multivector, array_conjugate, array_product
from .coeffs import SparseCoeffs
from .cpoly import (CliffPoly, DEGREE_CAP, ck_product, monogenic_variable, mono_exp_array,
                    multi_factorial, multi_indices, poly_diff, poly_shift, v_monomial,
                    exp_series)
from .numerics import complex_gaussian_grid, gaussian_grid
from .oscillator import BargmannElem, HElement, ladder_apply

DEFAULT_TRUNCATION = 12


class M2Element(SparseCoeffs):
    """Element of M^2 as coefficients in the ``V_k`` basis."""

    __slots__ = ()


# ---------------------------------------------------------------------------
# realization

def to_cliffpoly(f: M2Element, cap: int | None = None) -> CliffPoly:
    cap = max(DEGREE_CAP, f.degree()) if cap is None else cap
    acc = CliffPoly(f.n, cap=cap)
    for k, c in f:
        acc = acc + v_monomial(k, cap=cap) * c
    return acc


def from_cliffpoly(p: CliffPoly, tol: float = 1e-12) -> M2Element:
    """Read a monogenic polynomial back in the ``V_k`` basis from its restriction."""
    out = {}
    for e, c in p.restrict().terms.items():
        if any(abs(v) > tol for b, v in c.coeffs.items() if b):
            raise ValueError("restriction has non-scalar coefficients; not in M^2")
        out[e[1:]] = c.scalar_part * sqrt(multi_factorial(e[1:]))
    return M2Element(p.n, out)


def m2_evaluate(f: M2Element, points) -> np.ndarray:
    """Values at points ``(P, n+1)`` as coefficient arrays ``(P, 2**n)``."""
    return to_cliffpoly(f).evaluate(np.atleast_2d(np.asarray(points, dtype=float)))


def _restriction(f: M2Element) -> dict[tuple[int, ...], complex]:
    return {k: c / sqrt(multi_factorial(k)) for k, c in f}


def _from_restriction(n: int, raw: dict, max_degree: int | None = None):
    keep, tail = {}, {}
    for k, a in raw.items():
        c = a * sqrt(multi_factorial(k))
        if max_degree is not None and sum(k) > max_degree:
            tail[k] = c
        else:
            keep[k] = c
    return M2Element(n, keep), M2Element(n, tail)


# ---------------------------------------------------------------------------
# inner product

@dataclass(frozen=True)
class InnerResult:
    """Both realizations of ``<f, g>``: coefficient contraction and quadrature.

    ``quadrature`` is the full Clifford-valued integral; the complex inner
    product is its scalar part.
    """

    exact: complex
    quadrature: Multivector | None

    @property
    def discrepancy(self) -> float:
        if self.quadrature is None:
            return 0.0
        return (self.quadrature - self.exact).max_abs()


def exact_order(total_degree: int) -> int:
    """Smallest Gauss-Hermite order integrating a polynomial of this degree exactly."""
    return max(1, (total_degree + 2) // 2)


def m2_quadrature(f: M2Element, g: M2Element, order: int | None = None) -> Multivector:
    """``int conj(f) g`` against the normalized Gaussian on R^{n+1}."""
    f._same(g)
    n = f.n
    order = exact_order(f.degree() + g.degree()) if order is None else order
    pts, w = gaussian_grid(n + 1, order)
    F = array_conjugate(m2_evaluate(f, pts), n)
    G = m2_evaluate(g, pts)
    return Multivector.from_array(n, np.tensordot(w, array_product(F, G, n), axes=1))


def m2_inner(f: M2Element, g: M2Element, order: int | None = None,
             quadrature: bool = True) -> InnerResult:
    quad = m2_quadrature(f, g, order) if quadrature else None
    return InnerResult(f.inner(g), quad)


def m2_gram(n: int, max_degree: int, order: int | None = None) -> tuple[list, np.ndarray]:
    """Clifford-valued Gram matrix of ``V_k``, ``|k| <= max_degree``, by quadrature.

    Returns the index list and an array ``(K, K, 2**n)`` of blade coefficients.
    """
    idx = multi_indices(n, max_degree)
    order = exact_order(2 * max_degree) if order is None else order
    pts, w = gaussian_grid(n + 1, order)
    vals = np.stack([v_monomial(k).evaluate(pts) for k in idx])
    conj = array_conjugate(vals, n)
    gram = np.empty((len(idx), len(idx), 1 << n), dtype=complex)
    for a in range(len(idx)):
        prod = array_product(conj[a][None], vals, n)
        gram[a] = np.tensordot(w, prod, axes=([0], [1]))
    return idx, gram


def gram_residual(gram: np.ndarray) -> float:
    """Largest entrywise deviation of a Clifford Gram array from the identity."""
    target = np.zeros_like(gram)
    target[..., 0] = np.eye(gram.shape[0])
    return float(np.max(np.abs(gram - target)))


# ---------------------------------------------------------------------------
# ladder operators

def create_apply(j: int, f: M2Element, cap: int = DEGREE_CAP) -> M2Element:
    """CK multiplication by the monogenic variable ``x_j``, on coefficients."""
    return ladder_apply(+1, j, f, cap=cap)


def annihilate_apply(j: int, f: M2Element) -> M2Element:
    """Partial derivative in ``x_j``, on coefficients."""
    return ladder_apply(-1, j, f)


def create_via_ck(j: int, f: M2Element) -> M2Element:
    cap = f.degree() + 1
    return from_cliffpoly(ck_product(monogenic_variable(f.n, j, cap=cap), to_cliffpoly(f, cap)))


def annihilate_via_diff(j: int, f: M2Element) -> M2Element:
    return from_cliffpoly(poly_diff(to_cliffpoly(f), j))


# ---------------------------------------------------------------------------
# the representation

def _shift_raw(raw: dict, s: np.ndarray) -> dict:
    out: dict[tuple[int, ...], complex] = {}
    for k, a in raw.items():
        partial = {(): a}
        for j, kj in enumerate(k):
            nxt = {}
            for pre, c in partial.items():
                for i in range(kj + 1):
                    key = pre + (i,)
                    nxt[key] = nxt.get(key, 0) + c * comb(kj, i) * s[j] ** (kj - i)
            partial = nxt
        for key, c in partial.items():
            out[key] = out.get(key, 0) + c
    return out


def _mul_raw(a: dict, b: dict) -> dict:
    out: dict[tuple[int, ...], complex] = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return out


def _exp_raw(w: np.ndarray, max_degree: int) -> dict:
    return {k: complex(np.prod(w ** np.array(k))) / multi_factorial(k)
            for k in multi_indices(len(w), max_degree)}


def _group_params(g: HElement):
    u, v = g.p, g.q
    scale = float(np.exp(-(g.t + (u @ u - v @ v) / 4)))
    return scale, (u + v) / sqrt(2), (u - v) / sqrt(2)


@dataclass(frozen=True)
class ActResult:
    value: M2Element
    tail: float


def pi_m2_act(g: HElement, f: M2Element, N: int = DEFAULT_TRUNCATION) -> ActResult:
    """Apply the M^2 representation operator, truncated at degree ``N``.

    The operator is a real scale factor, then CK multiplication by the
    exponential ``E((u+v)/sqrt2, .)``, then the shift by ``(u-v)/sqrt2``
    (the shift acts first).  ``tail`` bounds what truncation dropped: the
    discarded product coefficients plus the exponential series beyond ``N``.
    """
    if g.n != f.n:
        raise ValueError("group element and function have different n")
    scale, w, s = _group_params(g)
    shifted = _shift_raw(_restriction(f), s)
    prod = _mul_raw(_exp_raw(w, N), shifted)
    kept, dropped = _from_restriction(f.n, prod, N)
    series_tail = sum(abs(complex(np.prod(w ** np.array(k)))) / sqrt(multi_factorial(k))
                      for k in multi_indices(f.n, N + 20) if sum(k) > N)
    tail = scale * (sum(abs(c) for _, c in dropped) + series_tail * max(
        (abs(c) for _, c in f), default=0.0))
    return ActResult(kept * scale, float(tail))


def pi_m2_act_ck(g: HElement, f: M2Element, N: int = DEFAULT_TRUNCATION) -> M2Element:
    """Same operator through CliffPoly shift and CK product; a cross-check route."""
    scale, w, s = _group_params(g)
    cap = N + f.degree()
    shifted = poly_shift(to_cliffpoly(f, cap), s)
    prod = ck_product(exp_series(w, N, cap=cap), shifted)
    return from_cliffpoly(prod).truncate(N) * scale


def m2_coherent(g: HElement, N: int = DEFAULT_TRUNCATION):
    """Coherent state ``pi_g V_0``: closed-form evaluator and degree-``N`` expansion."""
    scale, w, _ = _group_params(g)

    def evaluate(points) -> np.ndarray:
        return scale * mono_exp_array(w, np.atleast_2d(np.asarray(points, dtype=float)))

    coeffs = {k: scale * complex(np.prod(w ** np.array(k))) / sqrt(multi_factorial(k))
              for k in multi_indices(g.n, N)}
    return evaluate, M2Element(g.n, coeffs)


# ---------------------------------------------------------------------------
# intertwining with the Segal-Bargmann model

def b_kernel(z: Sequence[complex], x: Sequence[float], N: int = DEFAULT_TRUNCATION,
             holomorphic: bool = False) -> Multivector:
    """Truncated ``B(z, x) = sum_k V_k(x) conj(z)^k / sqrt(k!)``.

    With ``holomorphic=True`` the factor ``z^k`` is used instead; that
    convention fails the restriction identity ``B(z, (0, x)) = exp(x . conj z)``.
    """
    z = np.asarray(z, dtype=complex)
    zz = z if holomorphic else np.conj(z)
    pt = np.asarray(x, dtype=float)[None, :]
    acc = np.zeros(1 << len(z), dtype=complex)
    for k in multi_indices(len(z), N):
        c = complex(np.prod(zz ** np.array(k))) / sqrt(multi_factorial(k))
        if c:
            acc += c * v_monomial(k, cap=max(N, DEGREE_CAP)).evaluate(pt)[0]
    return Multivector.from_array(len(z), acc)


def b_transform(F: BargmannElem) -> M2Element:
    """Bargmann basis ``z^m/sqrt(m!)`` to ``V_m``, coefficientwise."""
    return M2Element(F.n, F.coeffs)


def b_inverse(f: M2Element) -> BargmannElem:
    return BargmannElem(f.n, f.coeffs)


def b_transform_integral(F: BargmannElem, points, N: int = DEFAULT_TRUNCATION,
                         order: int | None = None) -> np.ndarray:
    """``int B(z, x) F(z) dmu(z)`` at ``points`` by quadrature over C^n."""
    n = F.n
    order = exact_order(2 * N) if order is None else order
    zs, wz = complex_gaussian_grid(n, order)
    Fz = F(zs) * wz
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.zeros((pts.shape[0], 1 << n), dtype=complex)
    for k in multi_indices(n, N):
        ck = np.sum(Fz * np.prod(np.conj(zs) ** np.array(k), axis=-1)) / sqrt(multi_factorial(k))
        if abs(ck) > 0:
            out += ck * v_monomial(k, cap=max(N, DEGREE_CAP)).evaluate(pts)
    return out


def b_inverse_integral(f: M2Element, N: int = DEFAULT_TRUNCATION,
                       order: int | None = None) -> BargmannElem:
    """Coefficients of the inverse transform from the quadrature inner products
    ``<V_k, f>``; exact only where the ``V_k`` are orthonormal."""
    out = {}
    for k in multi_indices(f.n, N):
        out[k] = m2_quadrature(M2Element.basis(k), f, order).scalar_part
    return BargmannElem(f.n, out)


def bargmann_ladder_matrix(op: Callable, n: int, max_degree: int) -> np.ndarray:
    """Matrix of a coefficient operator on the span of degree ``<= max_degree``."""
    idx = multi_indices(n, max_degree)
    pos = {k: i for i, k in enumerate(idx)}
    mat = np.zeros((len(idx), len(idx)), dtype=complex)
    for col, k in enumerate(idx):
        for m, v in op(k):
            if m in pos:
                mat[pos[m], col] = v
    return mat


# ---------------------------------------------------------------------------
# reproducing kernel

def _v_values(n: int, N: int, points: np.ndarray) -> tuple[list, np.ndarray]:
    idx = multi_indices(n, N)
    cap = max(N, DEGREE_CAP)
    return idx, np.stack([v_monomial(k, cap=cap).evaluate(points) for k in idx])


def m2_repro_kernel(x, y, N: int = DEFAULT_TRUNCATION) -> Multivector:
    """Truncated ``K(x, y) = sum_k V_k(x) conj(V_k(y))``."""
    x = np.asarray(x, dtype=float)[None, :]
    y = np.asarray(y, dtype=float)[None, :]
    n = x.shape[1] - 1
    _, vx = _v_values(n, N, x)
    _, vy = _v_values(n, N, y)
    total = array_product(vx[:, 0], array_conjugate(vy[:, 0], n), n).sum(axis=0)
    return Multivector.from_array(n, total)


def m2_reproduce(f: M2Element, y, N: int = 8, order: int | None = None) -> Multivector:
    """``int K(y, x) f(x) dmu(x)`` by quadrature; equals ``f(y)`` when the kernel reproduces."""
    n = f.n
    y = np.asarray(y, dtype=float)[None, :]
    order = exact_order(N + f.degree()) if order is None else order
    pts, w = gaussian_grid(n + 1, order)
    _, vy = _v_values(n, N, y)
    _, vx = _v_values(n, N, pts)
    fx = m2_evaluate(f, pts)
    coeffs = np.stack([np.tensordot(w, array_product(array_conjugate(vx[i], n), fx, n), axes=1)
                       for i in range(vx.shape[0])])
    total = array_product(vy[:, 0], coeffs, n).sum(axis=0)
    return Multivector.from_array(n, total)
