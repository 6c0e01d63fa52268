"""The step-two nilpotent group G^n with n-dimensional centre.

A point is ``(t_1..t_n; p; q_1..q_n)``.  Functions carried by the
representation are n-tuples whose j-th component takes values in the
commutative subalgebra span{1, e_j} of Cl(0,n); each component is stored as
a complex-valued function with ``i`` standing for ``e_j``.

Conventions:

* group law ``t_j'' = t_j + t_j' + (p' q_j - p q_j')/2``;
* ``[rho_g f]_j(x) = exp(e_j (2 t_j + q_j (sqrt2 x - p))) f_j(x - sqrt2 p)``;
* the Clifford inner product conjugates its *first* argument;
* the wavelet transform is ``W f(g) = <f_g, f>`` with ``f_g = rho_g f_0``;
* flat coordinates for finite differences are ``(t_1..t_n, p, q_1..q_n)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .clifford import Multivector, from_span, sum_multivectors
from .numerics import OperatorStencil, StencilTerm, hermite_rule
from .oscillator import HElement

PI = np.pi


# ---------------------------------------------------------------------------
# the group

@dataclass(frozen=True)
class GElement:
    t: tuple[float, ...]
    p: float
    q: tuple[float, ...]

    def __post_init__(self):
        t = tuple(float(v) for v in np.atleast_1d(self.t))
        q = tuple(float(v) for v in np.atleast_1d(self.q))
        if len(t) != len(q):
            raise ValueError("t and q must have the same length")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", float(self.p))

    @property
    def n(self) -> int:
        return len(self.t)

    def flat(self) -> np.ndarray:
        return np.array(self.t + (self.p,) + self.q)

    @classmethod
    def from_flat(cls, x: Sequence[float]) -> "GElement":
        x = np.asarray(x, dtype=float)
        n = (len(x) - 1) // 2
        return cls(x[:n], x[n], x[n + 1:])


def g_identity(n: int) -> GElement:
    return GElement((0.0,) * n, 0.0, (0.0,) * n)


def g_mul(g: GElement, h: GElement) -> GElement:
    if g.n != h.n:
        raise ValueError("elements of different G^n")
    t = np.array(g.t) + np.array(h.t) + 0.5 * (h.p * np.array(g.q) - g.p * np.array(h.q))
    return GElement(t, g.p + h.p, np.array(g.q) + np.array(h.q))


def g_inv(g: GElement) -> GElement:
    return GElement(-np.array(g.t), -g.p, -np.array(g.q))


def g1_to_h1(g: GElement):
    """The isomorphism G^1 -> H^1, ``(t, p, q) -> (t, q + i p)``."""
    if g.n != 1:
        raise ValueError("only G^1 is the Heisenberg group")
    return HElement(g.t[0], [g.q[0] + 1j * g.p])


def section(a: Sequence[float]) -> GElement:
    """``s(a) = (0; a_0; a_1..a_n)`` for ``a`` in Omega = R^{n+1}."""
    a = np.asarray(a, dtype=float)
    return GElement(np.zeros(len(a) - 1), a[0], a[1:])


def omega_coords(g: GElement) -> np.ndarray:
    return np.array((g.p,) + g.q)


# ---------------------------------------------------------------------------
# component functions

@dataclass(frozen=True)
class PolyGauss:
    """``poly(x) * exp(lin * x - x^2/2)`` on R; ``poly`` in ascending powers."""

    poly: tuple[complex, ...]
    lin: complex

    def __post_init__(self):
        object.__setattr__(self, "poly", tuple(complex(c) for c in np.atleast_1d(self.poly)))
        object.__setattr__(self, "lin", complex(self.lin))

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return P.polyval(x, np.array(self.poly)) * np.exp(self.lin * x - 0.5 * x * x)


def _merge(terms) -> tuple[PolyGauss, ...]:
    by_lin: dict[complex, np.ndarray] = {}
    for term in terms:
        c = np.array(term.poly)
        prev = by_lin.get(term.lin)
        by_lin[term.lin] = c if prev is None else P.polyadd(prev, c)
    out = []
    for lin, c in by_lin.items():
        c = np.trim_zeros(np.asarray(c, dtype=complex), "b")
        if c.size:
            out.append(PolyGauss(c, lin))
    return tuple(out)


class VPacket:
    """n-tuple of component functions, component j valued in span{1, e_j}."""

    __slots__ = ("n", "comps")

    def __init__(self, comps: Sequence[Sequence[PolyGauss]]):
        object.__setattr__(self, "n", len(comps))
        object.__setattr__(self, "comps", tuple(_merge(c) for c in comps))

    def __setattr__(self, name, value):
        raise AttributeError("VPacket is immutable")

    @classmethod
    def simple(cls, amps: Sequence[complex], lins: Sequence[complex]) -> "VPacket":
        return cls([[PolyGauss([a], l)] for a, l in zip(amps, lins)])

    def component(self, j: int, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return sum((term(x) for term in self.comps[j - 1]), np.zeros_like(x, dtype=complex))

    def __call__(self, x: float) -> Multivector:
        return sum_multivectors((from_span(self.component(j, x), self.n, j)
                                 for j in range(1, self.n + 1)), self.n)

    def __add__(self, other: "VPacket") -> "VPacket":
        return VPacket([a + b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> "VPacket":
        return self.scale(-1)

    def __sub__(self, other: "VPacket") -> "VPacket":
        return self + (-other)

    def scale(self, c) -> "VPacket":
        """Multiply component j by ``c`` (a complex number, ``i`` read as ``e_j``),
        or per component when ``c`` is a sequence."""
        cs = c if isinstance(c, (list, tuple, np.ndarray)) else [c] * self.n
        return VPacket([[PolyGauss(np.array(t.poly) * cj, t.lin) for t in comp]
                        for comp, cj in zip(self.comps, cs)])

    def is_zero(self) -> bool:
        return all(len(c) == 0 for c in self.comps)

    def max_poly_degree(self) -> int:
        return max((len(t.poly) - 1 for c in self.comps for t in c), default=0)


def nil_vacuum(n: int, normalized: bool = True) -> VPacket:
    amp = PI ** -0.25 if normalized else 1.0
    return VPacket.simple([amp] * n, [0] * n)


def nil_vacuum_component(n: int, j: int, normalized: bool = True) -> VPacket:
    """The vacuum vector supported on component ``j`` only."""
    amp = PI ** -0.25 if normalized else 1.0
    return VPacket([[PolyGauss([amp], 0)] if k == j else [] for k in range(1, n + 1)])


# ---------------------------------------------------------------------------
# the representation

def rho_act(g: GElement, f: VPacket) -> VPacket:
    """Exact action of ``rho_g``: polynomial shift plus Gaussian parameter update."""
    if g.n != f.n:
        raise ValueError("group element and function have different n")
    p = g.p
    comps = []
    for j, comp in enumerate(f.comps):
        tj, qj = g.t[j], g.q[j]
        out = []
        for term in comp:
            lin = term.lin
            const = np.exp(1j * (2 * tj - qj * p) - sqrt(2) * lin * p - p * p)
            # P(x - sqrt2 p) re-expanded in powers of x
            shifted = np.zeros(len(term.poly), dtype=complex)
            basis = np.array([1.0 + 0j])
            step = np.array([-sqrt(2) * p, 1.0])
            for c in term.poly:
                shifted[:len(basis)] += c * basis
                basis = P.polymul(basis, step)
            out.append(PolyGauss(shifted * const, lin + sqrt(2) * p + 1j * sqrt(2) * qj))
        comps.append(out)
    return VPacket(comps)


def _gauss_moments(b: complex, kmax: int) -> np.ndarray:
    """``int x^k exp(b x - x^2) dx`` for ``k = 0..kmax``."""
    mu = np.zeros(kmax + 1, dtype=complex)
    mu[0] = 1.0
    if kmax >= 1:
        mu[1] = b / 2
    for k in range(2, kmax + 1):
        mu[k] = b / 2 * mu[k - 1] + (k - 1) / 2 * mu[k - 2]
    return np.sqrt(PI) * np.exp(b * b / 4) * mu


def component_inner(a: Sequence[PolyGauss], b: Sequence[PolyGauss]) -> complex:
    """``int conj(a) b dx`` in closed form."""
    total = 0j
    for s in a:
        for t in b:
            prod = P.polymul(np.conj(np.array(s.poly)), np.array(t.poly))
            mom = _gauss_moments(np.conj(s.lin) + t.lin, len(prod) - 1)
            total += np.dot(prod, mom)
    return complex(total)


def component_inner_quad(a: Sequence[PolyGauss], b: Sequence[PolyGauss],
                         order: int = 40) -> complex:
    """Same integral by Gauss-Hermite quadrature (weight ``e^{-x^2}`` factored out)."""
    rule = hermite_rule(order)
    x = rule.nodes

    def reduced(terms):
        return sum((P.polyval(x, np.array(t.poly)) * np.exp(t.lin * x) for t in terms),
                   np.zeros_like(x, dtype=complex))

    return complex(np.sum(rule.weights * np.conj(reduced(a)) * reduced(b)))


def cliff_inner(f: VPacket, h: VPacket, quadrature: bool = False, order: int = 40) -> Multivector:
    """Clifford-valued ``<f, h> = sum_j int conj(f_j) h_j dx``."""
    if f.n != h.n:
        raise ValueError("different n")
    inner = component_inner_quad if quadrature else component_inner
    kw = {"order": order} if quadrature else {}
    return sum_multivectors((from_span(inner(f.comps[j], h.comps[j], **kw), f.n, j + 1)
                             for j in range(f.n)), f.n)


def component_inners(f: VPacket, h: VPacket) -> np.ndarray:
    return np.array([component_inner(a, b) for a, b in zip(f.comps, h.comps)])


def vpacket_norm(f: VPacket) -> float:
    # abs: for tiny norms cancellation can leave a slightly negative square
    return float(np.sqrt(abs(cliff_inner(f, f).scalar_part.real)))


# ---------------------------------------------------------------------------
# derived representation and ladder operators

def _only(f: VPacket, j: int, fn: Callable[[PolyGauss], PolyGauss]) -> VPacket:
    return VPacket([[fn(t) for t in comp] if k == j else []
                    for k, comp in enumerate(f.comps, start=1)])


def _times_x(t: PolyGauss) -> PolyGauss:
    return PolyGauss(P.polymulx(np.array(t.poly)), t.lin)


def _deriv(t: PolyGauss) -> PolyGauss:
    c = np.array(t.poly)
    d = P.polyadd(P.polyder(c), P.polysub(t.lin * c, P.polymulx(c)))
    return PolyGauss(d, t.lin)


def drho_apply(name: str, f: VPacket, j: int | None = None) -> VPacket:
    """Derived representation on the basis ``T_j``, ``P``, ``Q_j`` of the Lie algebra.

    ``T_j`` multiplies component j by ``2 e_j``; ``P`` is ``-sqrt2 d/dx`` on
    every component; ``Q_j`` multiplies component j by ``-sqrt2 e_j x``.
    """
    if name == "P":
        return VPacket([[PolyGauss(-sqrt(2) * np.array(d.poly), d.lin)
                         for d in map(_deriv, comp)] for comp in f.comps])
    if j is None or not 1 <= j <= f.n:
        raise ValueError(f"{name} needs an index in 1..{f.n}")
    if name == "T":
        return _only(f, j, lambda t: PolyGauss(2j * np.array(t.poly), t.lin))
    if name == "Q":
        return _only(f, j, lambda t: PolyGauss(-sqrt(2) * 1j * np.array(_times_x(t).poly), t.lin))
    raise ValueError(f"unknown Lie algebra element {name!r}")


def left_e(j: int, f: VPacket) -> VPacket:
    """Left multiplication by ``e_j``; ``f`` must be supported on component j."""
    if any(comp for k, comp in enumerate(f.comps, start=1) if k != j):
        raise ValueError(f"e_{j} f leaves the component subalgebras")
    return _only(f, j, lambda t: PolyGauss(1j * np.array(t.poly), t.lin))


def a_minus(f: VPacket) -> VPacket:
    """``a^- = drho(P) - sum_j e_j drho(Q_j)``."""
    out = drho_apply("P", f)
    for j in range(1, f.n + 1):
        out = out - left_e(j, drho_apply("Q", f, j))
    return out


def a_plus(k: int, f: VPacket) -> VPacket:
    """``a_k^+ = a^- + 2 e_k drho(Q_k)``."""
    return a_minus(f) + left_e(k, drho_apply("Q", f, k)).scale(2)


# ---------------------------------------------------------------------------
# wavelet transforms

def coherent_state(g: GElement, vacuum: VPacket | None = None) -> VPacket:
    return rho_act(g, nil_vacuum(g.n) if vacuum is None else vacuum)


def g_wavelet(f: VPacket, g: GElement, quadrature: bool = True, order: int = 40,
              vacuum: VPacket | None = None) -> Multivector:
    """``W f(g) = <f_g, f>`` with the coherent state ``f_g = rho_g f_0``."""
    return cliff_inner(coherent_state(g, vacuum), f, quadrature=quadrature, order=order)


def _zeta_alpha(a: Sequence[float], z: Sequence[float]):
    a = np.asarray(a, dtype=float)
    z = np.asarray(z, dtype=float)
    return z[0] + 1j * z[1:], a[0] + 1j * a[1:]


def g_wavelet_closed_components(tp, a, t, z) -> np.ndarray:
    """Per-component values (``i`` read as ``e_j``) of ``W f_(t',a)(t, z)``."""
    zeta, alpha = _zeta_alpha(a, z)
    tp = np.asarray(tp, dtype=float)
    t = np.asarray(t, dtype=float)
    return np.exp(-2j * (t - tp) - 0.5 * (np.abs(zeta) ** 2 + np.abs(alpha) ** 2)
                  + alpha * np.conj(zeta))


def g_wavelet_closed(tp, a, t, z) -> Multivector:
    """Closed form ``sum_j exp(-2e_j(t_j - t'_j) - (|z_j|^2 + |a_j|^2)/2 + a_j conj(z_j))``
    with ``z_j = p + e_j q_j`` and ``a_j = a_0 + e_j a_j``."""
    vals = g_wavelet_closed_components(tp, a, t, z)
    n = len(vals)
    return sum_multivectors((from_span(v, n, j + 1) for j, v in enumerate(vals)), n)


def wavelet_image(tp, a) -> Callable[[np.ndarray], Multivector]:
    """``W f_(t',a)`` as a function of flat coordinates ``(t, p, q)``."""
    def F(point):
        point = np.asarray(point, dtype=float)
        n = (len(point) - 1) // 2
        return g_wavelet_closed(tp, a, point[:n], point[n:])
    return F


def reduced_wavelet_components(a, z) -> np.ndarray:
    zeta, alpha = _zeta_alpha(a, z)
    return np.exp(alpha * np.conj(zeta))


def reduced_wavelet(a, z) -> Multivector:
    """Renormalized restriction ``sum_j exp(a_j conj(z_j))`` of ``W f_(0,a)(0, z)``."""
    vals = reduced_wavelet_components(a, z)
    n = len(vals)
    return sum_multivectors((from_span(v, n, j + 1) for j, v in enumerate(vals)), n)


def renormalized_restriction(a, z) -> Multivector:
    """``W f_(0,a)(0, z)`` divided componentwise by its Gaussian factor."""
    zeta, alpha = _zeta_alpha(a, z)
    n = len(zeta)
    vals = g_wavelet_closed_components(np.zeros(n), a, np.zeros(n), z)
    vals = vals * np.exp(0.5 * (np.abs(zeta) ** 2 + np.abs(alpha) ** 2))
    return sum_multivectors((from_span(v, n, j + 1) for j, v in enumerate(vals)), n)


# ---------------------------------------------------------------------------
# differential operators in flat coordinates (t_1..t_n, p, q_1..q_n)

def _e(n: int, j: int) -> Multivector:
    return Multivector.basis(n, j)


def dirac_g_stencil(n: int) -> OperatorStencil:
    """``d/dp - sum e_j d/dq_j + 1/2 sum (e_j p + q_j) d/dt_j``."""
    terms = [StencilTerm(n, 1.0, 1)]
    for j in range(1, n + 1):
        terms.append(StencilTerm(n + j, -_e(n, j), 1))
        terms.append(StencilTerm(j - 1, (lambda pt, j=j: 0.5 * (_e(n, j) * pt[n] + pt[n + j])), 1))
    return OperatorStencil(tuple(terms), "dirac_g")


def reduced_dirac_stencil(n: int) -> OperatorStencil:
    """``d/dp - sum e_j d/dq_j`` on functions of ``(p, q_1..q_n)``."""
    terms = [StencilTerm(0, 1.0, 1)]
    terms += [StencilTerm(j, -_e(n, j), 1) for j in range(1, n + 1)]
    return OperatorStencil(tuple(terms), "reduced_dirac")


def vector_field(name: str, n: int, j: int | None = None) -> OperatorStencil:
    """Left-invariant ``T_j, P, Q_j`` and right-invariant ``T*_j, P*, Q*_j`` fields."""
    def need_j():
        if j is None or not 1 <= j <= n:
            raise ValueError(f"{name} needs an index in 1..{n}")
        return j

    if name in ("T", "T*"):
        return OperatorStencil((StencilTerm(need_j() - 1, 1.0, 1),), f"{name}{j}")
    if name in ("P", "P*"):
        sign = 0.5 if name == "P" else -0.5
        terms = [StencilTerm(n, 1.0, 1)]
        terms += [StencilTerm(k - 1, (lambda pt, k=k: sign * pt[n + k]), 1) for k in range(1, n + 1)]
        return OperatorStencil(tuple(terms), name)
    if name in ("Q", "Q*"):
        k = need_j()
        sign = 0.5 if name == "Q" else -0.5
        return OperatorStencil((StencilTerm(n + k, -1.0, 1),
                                StencilTerm(k - 1, lambda pt: sign * pt[n]),), f"{name}{k}")
    raise ValueError(f"unknown vector field {name!r}")
