"""Generic coherent-state machinery over a homogeneous space Omega = G/H.

A :class:`CoherentSystem` bundles a group, its action on a carrier space,
the carrier inner product, a vacuum vector, a section ``s: Omega -> G`` with
remainder ``r(g) = s(g)^{-1} g`` in the subgroup ``H`` and a character of
``H`` realized by the vacuum.  Two instances are provided: the Schrodinger
model of the Heisenberg group and the representation of G^n.

Omega points are real coordinate vectors throughout.  The wavelet transform
always conjugates the coherent state; each system says which argument of
its inner product is conjugated.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Callable, Sequence

import numpy as np

from . import nilgroup as nil
from . import oscillator as osc
from .clifford import Multivector, from_span
from .numerics import (DEFAULT_STEP, OperatorStencil, complex_gaussian_grid, finite_diff_apply,
                       magnitude)


class VacuumCharacterError(ValueError):
    """The vacuum is not an eigenvector of the subgroup H."""


class CoherentSystem(ABC):
    conjugate_side: str = "second"
    omega_dim: int

    @abstractmethod
    def mul(self, g, h): ...

    @abstractmethod
    def inv(self, g): ...

    @abstractmethod
    def identity(self): ...

    @abstractmethod
    def act(self, g, f): ...

    @abstractmethod
    def inner(self, f, h): ...

    @abstractmethod
    def vacuum(self): ...

    @abstractmethod
    def section(self, a: np.ndarray): ...

    @abstractmethod
    def omega_of(self, g) -> np.ndarray: ...

    @abstractmethod
    def remainder(self, g): ...

    @abstractmethod
    def character(self, h): ...

    @abstractmethod
    def scale(self, f, c): ...

    @abstractmethod
    def combine(self, coeffs: Sequence, states: Sequence): ...

    @abstractmethod
    def distance(self, f, h) -> float: ...

    @abstractmethod
    def omega_rule(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        """Points on Omega and weights for the invariant measure there, with the
        Gaussian weight factor already divided out."""

    def coherent(self, g):
        return self.act(g, self.vacuum())

    def conj(self, c):
        return c.conj() if isinstance(c, Multivector) else np.conj(c)


# ---------------------------------------------------------------------------
# instances

class OscillatorSystem(CoherentSystem):
    """Schrodinger model of H^n; Omega = C^n as ``(p_1..p_n, q_1..q_n)``."""

    conjugate_side = "second"

    def __init__(self, n: int = 1):
        self.n = n
        self.omega_dim = 2 * n

    def mul(self, g, h):
        return osc.h_mul(g, h)

    def inv(self, g):
        return osc.h_inv(g)

    def identity(self):
        return osc.h_identity(self.n)

    def act(self, g, f):
        return osc.schrodinger_act(g, f)

    def inner(self, f, h):
        return osc.packet_inner(f, h)

    def vacuum(self):
        return osc.vacuum(self.n)

    def section(self, a):
        a = np.asarray(a, dtype=float)
        return osc.HElement(0.0, a[:self.n] + 1j * a[self.n:])

    def omega_of(self, g):
        return np.concatenate([g.p, g.q])

    def remainder(self, g):
        return osc.HElement(g.t, np.zeros(self.n))

    def character(self, h):
        return complex(np.exp(2j * h.t))

    def scale(self, f, c):
        return tuple(term.scaled(c) for term in osc.as_terms(f))

    def combine(self, coeffs, states):
        return tuple(term.scaled(c) for c, s in zip(coeffs, states) for term in osc.as_terms(s))

    def distance(self, f, h):
        return osc.packet_distance(f, h)

    def omega_rule(self, order):
        z, w = complex_gaussian_grid(self.n, order)
        pts = np.concatenate([z.real, z.imag], axis=1)
        return pts, w * np.exp(np.sum(np.abs(z) ** 2, axis=1))


def span_value(c: Multivector, j: int, tol: float = 1e-12) -> complex:
    """Read ``a + b e_j`` (real ``a``, ``b``) as the complex number ``a + b i``."""
    a, b = c.scalar_part, c[1 << (j - 1)]
    others = max((abs(v) for k, v in c.coeffs.items() if k not in (0, 1 << (j - 1))), default=0.0)
    if others > tol or abs(a.imag) > tol or abs(b.imag) > tol:
        raise ValueError(f"{c!r} is not a real element of span(1, e_{j})")
    return complex(a.real, b.real)


class NilSystem(CoherentSystem):
    """The representation of G^n.

    With ``vacuum_component=j`` the vacuum is supported on component j only
    and Omega is the slice ``(p, q_j)``; this vacuum is an eigenvector of the
    subgroup ``p = q_j = 0`` for every ``n``, with character ``exp(2 e_j t_j)``.
    With the full vacuum that holds only for ``n = 1``.
    """

    conjugate_side = "first"

    def __init__(self, n: int = 1, vacuum_component: int | None = None):
        if vacuum_component is not None and not 1 <= vacuum_component <= n:
            raise ValueError("vacuum component out of range")
        self.n = n
        self.j = vacuum_component
        self.omega_dim = 2 if (vacuum_component is not None or n == 1) else n + 1

    def _slice(self) -> int:
        if self.j is not None:
            return self.j
        if self.n == 1:
            return 1
        raise VacuumCharacterError(
            "the full vacuum of G^n, n >= 2, is not an eigenvector of the centre")

    def mul(self, g, h):
        return nil.g_mul(g, h)

    def inv(self, g):
        return nil.g_inv(g)

    def identity(self):
        return nil.g_identity(self.n)

    def act(self, g, f):
        return nil.rho_act(g, f)

    def inner(self, f, h):
        return nil.cliff_inner(f, h)

    def vacuum(self):
        if self.j is None:
            return nil.nil_vacuum(self.n)
        return nil.nil_vacuum_component(self.n, self.j)

    def section(self, a):
        a = np.asarray(a, dtype=float)
        if self.omega_dim == self.n + 1 and self.j is None:
            return nil.section(a)
        q = np.zeros(self.n)
        q[self._slice() - 1] = a[1]
        return nil.GElement(np.zeros(self.n), a[0], q)

    def omega_of(self, g):
        if self.omega_dim == self.n + 1 and self.j is None:
            return nil.omega_coords(g)
        return np.array([g.p, g.q[self._slice() - 1]])

    def remainder(self, g):
        s = self.section(self.omega_of(g))
        return self.mul(self.inv(s), g)

    def character(self, h):
        j = self._slice()
        if abs(h.p) > 0 or h.q[j - 1]:
            raise ValueError("character is defined on the subgroup p = q_j = 0 only")
        return from_span(np.exp(2j * h.t[j - 1]), self.n, j)

    def scale(self, f, c):
        return f.scale(span_value(c, self._slice()))

    def combine(self, coeffs, states):
        j = self._slice()
        acc = nil.VPacket([[] for _ in range(self.n)])
        for c, s in zip(coeffs, states):
            acc = acc + s.scale(span_value(c, j))
        return acc

    def distance(self, f, h):
        return nil.vpacket_norm(f - h)

    def omega_rule(self, order):
        self._slice()
        z, w = complex_gaussian_grid(1, order)
        pts = np.concatenate([z.real, z.imag], axis=1)
        return pts, w * np.exp(np.abs(z[:, 0]) ** 2)


# ---------------------------------------------------------------------------
# framework operations

def wtransform(sys: CoherentSystem, f, g):
    """``W f(g)``: inner product of ``f`` with the coherent state ``w_g``,
    the coherent state being the conjugated argument."""
    w = sys.coherent(g)
    return sys.inner(f, w) if sys.conjugate_side == "second" else sys.inner(w, f)


def check_intertwine(sys: CoherentSystem, f, g, gp) -> float:
    """``|W(pi_g f)(g') - W f(g^{-1} g')|``."""
    lhs = wtransform(sys, sys.act(g, f), gp)
    rhs = wtransform(sys, f, sys.mul(sys.inv(g), gp))
    return magnitude(lhs - rhs)


def unitarity_residual(sys: CoherentSystem, g, f, h) -> float:
    return magnitude(sys.inner(sys.act(g, f), sys.act(g, h)) - sys.inner(f, h))


def homogeneity_residual(sys: CoherentSystem, h) -> float:
    """Distance between ``pi_h f_0`` and ``chi(h) f_0`` for ``h`` in the subgroup."""
    f0 = sys.vacuum()
    return sys.distance(sys.act(h, f0), sys.scale(f0, sys.character(h)))


def reduced_transform(sys: CoherentSystem, f, a):
    """``W f(s(a))``; requires the vacuum to carry a character of H."""
    sys.character(sys.remainder(sys.identity()))
    return wtransform(sys, f, sys.section(a))


def character_factor(sys: CoherentSystem, f, g):
    """``conj(chi(r(g))) * W^ f(s(g))``, which should equal ``W f(g)``."""
    chi = sys.character(sys.remainder(g))
    return sys.conj(chi) * reduced_transform(sys, f, sys.omega_of(g))


def factorization_residual(sys: CoherentSystem, f, g) -> float:
    return magnitude(wtransform(sys, f, g) - character_factor(sys, f, g))


def reconstruct(sys: CoherentSystem, f, order: int = 20):
    """Recover ``f`` as a combination of coherent states over Omega.

    Returns the reconstructed carrier element and its distance to ``f``.
    """
    pts, w = sys.omega_rule(order)
    coeffs, states = [], []
    for a, wi in zip(pts, w):
        coeffs.append(wi * reduced_transform(sys, f, a))
        states.append(sys.coherent(sys.section(a)))
    recon = sys.combine(coeffs, states)
    return recon, sys.distance(recon, f)


def repro_kernel(sys: CoherentSystem, a, ap):
    """Kernel ``k(a, a') = <w_a', w_a>`` (coherent state ``w_a`` conjugated)
    written through the vacuum image: ``W f_0(g)`` with ``g = s(a')^{-1} s(a)``,
    factorized by the character."""
    g = sys.mul(sys.inv(sys.section(ap)), sys.section(a))
    return character_factor(sys, sys.vacuum(), g)


def project(sys: CoherentSystem, phi: Callable[[np.ndarray], Any], order: int = 20):
    """Orthogonal projection onto transforms: ``(P phi)(a) = int k(a, a') phi(a') da'``."""
    pts, w = sys.omega_rule(order)
    vals = [wi * phi(ap) for ap, wi in zip(pts, w)]

    def projected(a):
        return sum(repro_kernel(sys, a, ap) * v for ap, v in zip(pts, vals))

    return projected


def cr_dirac_check(ops: Sequence[OperatorStencil], functions: Sequence[Callable],
                   points: Sequence[np.ndarray], h: float = DEFAULT_STEP) -> list[float]:
    """Largest residual of each operator over the given functions and points."""
    return [max(magnitude(finite_diff_apply(op, F, pt, h)) for F in functions for pt in points)
            for op in ops]


def oscillator_image(f, n: int) -> Callable[[np.ndarray], complex]:
    """``W^ f`` as a function of real Omega coordinates ``(p, q)``."""
    image = osc.sb_forward(f)
    return lambda a: complex(image(np.asarray(a[:n]) + 1j * np.asarray(a[n:]))[0])


def oscillator_cr_ops(n: int) -> list[OperatorStencil]:
    return [osc.bargmann_cr_stencil(n, j) for j in range(1, n + 1)]
