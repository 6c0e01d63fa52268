"""Heisenberg group H^n, its Schrodinger representation and the Segal-Bargmann model.

Conventions (hbar = 1):

* group law ``(t, z) * (t', z') = (t + t' + Im(conj(z).z')/2, z + z')``;
* Schrodinger action, ``z = p + i q``::

      [pi_(t,z) f](x) = exp(i(2t - sqrt2 <q,x> + <q,p>)) f(x - sqrt2 p)

* the L^2(R^n) inner product conjugates its *second* argument;
* coherent states are built from the normalized vacuum
  ``pi^{-n/4} exp(-x.x/2)``, so ``W f(z) = <f, w_(0,z)>`` and the analytic
  part ``breve f(z) = exp(|z|^2/2) W f(z)`` has Bargmann coefficients equal
  to the Hermite coefficients of ``f``;
* Bargmann space uses the probability measure ``pi^{-n} e^{-|z|^2} dz`` in
  which ``z^m / sqrt(m!)`` is orthonormal.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial, sqrt
from typing import Callable, Iterable, Sequence, Union

import numpy as np
from numpy.polynomial import hermite as npherm

from .coeffs import SparseCoeffs
from .cpoly import multi_factorial, multi_indices
from .numerics import (DEFAULT_ORDER, OperatorStencil, StencilTerm, complex_gaussian_grid,
                       gaussian_grid)

HERMITE_CAP = 30
PI = np.pi


# ---------------------------------------------------------------------------
# the group

@dataclass(frozen=True)
class HElement:
    t: float
    z: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "z", tuple(complex(v) for v in np.atleast_1d(self.z)))

    @property
    def n(self) -> int:
        return len(self.z)

    @property
    def zarr(self) -> np.ndarray:
        return np.array(self.z, dtype=complex)

    @property
    def p(self) -> np.ndarray:
        return self.zarr.real

    @property
    def q(self) -> np.ndarray:
        return self.zarr.imag


def h_identity(n: int) -> HElement:
    return HElement(0.0, (0j,) * n)


def h_mul(g: HElement, h: HElement) -> HElement:
    if g.n != h.n:
        raise ValueError("elements of different H^n")
    zg, zh = g.zarr, h.zarr
    return HElement(g.t + h.t + 0.5 * float(np.sum(np.imag(np.conj(zg) * zh))), zg + zh)


def h_inv(g: HElement) -> HElement:
    return HElement(-g.t, -g.zarr)


# ---------------------------------------------------------------------------
# Gaussian packets

@dataclass(frozen=True)
class GaussPacket:
    """``amp * exp(lin . x - x.x/2)`` on R^n."""

    amp: complex
    lin: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "amp", complex(self.amp))
        object.__setattr__(self, "lin", tuple(complex(v) for v in np.atleast_1d(self.lin)))

    @property
    def n(self) -> int:
        return len(self.lin)

    @property
    def linarr(self) -> np.ndarray:
        return np.array(self.lin, dtype=complex)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.amp * np.exp(x @ self.linarr - 0.5 * np.sum(x * x, axis=-1))

    def scaled(self, c: complex) -> "GaussPacket":
        return GaussPacket(self.amp * c, self.lin)


Packets = Union[GaussPacket, Sequence[GaussPacket]]


def as_terms(f: Packets) -> tuple[GaussPacket, ...]:
    return (f,) if isinstance(f, GaussPacket) else tuple(f)


def vacuum(n: int, normalized: bool = True) -> GaussPacket:
    return GaussPacket(PI ** (-n / 4) if normalized else 1.0, (0j,) * n)


def packet_inner(f: Packets, g: Packets) -> complex:
    """``int f conj(g) dx`` in closed form for sums of packets."""
    total = 0j
    for a in as_terms(f):
        for b in as_terms(g):
            s = a.linarr + np.conj(b.linarr)
            total += a.amp * np.conj(b.amp) * PI ** (a.n / 2) * np.exp(np.sum(s * s) / 4)
    return complex(total)


def packet_norm(f: Packets) -> float:
    # abs: for tiny norms cancellation can leave a slightly negative square
    return float(np.sqrt(abs(packet_inner(f, f).real)))


def packet_distance(f: Packets, g: Packets) -> float:
    return packet_norm(as_terms(f) + tuple(b.scaled(-1) for b in as_terms(g)))


def packet_eval(f: Packets, x) -> np.ndarray:
    return sum(a(x) for a in as_terms(f))


def schrodinger_act(g: HElement, f: Packets) -> Packets:
    """Exact Schrodinger action on packets (closed-form parameter update)."""
    p, q = g.p, g.q
    out = []
    for a in as_terms(f):
        lin = a.linarr
        amp = a.amp * np.exp(1j * (2 * g.t + q @ p) - sqrt(2) * (lin @ p) - p @ p)
        out.append(GaussPacket(amp, lin + sqrt(2) * p - 1j * sqrt(2) * q))
    return out[0] if isinstance(f, GaussPacket) else tuple(out)


def weyl_shift(c: Sequence[float], f: GaussPacket) -> GaussPacket:
    """``f(x) -> f(x + c)``."""
    c = np.asarray(c, dtype=float)
    return GaussPacket(f.amp * np.exp(f.linarr @ c - 0.5 * c @ c), f.linarr - c)


def weyl_modulate(b: Sequence[float], f: GaussPacket) -> GaussPacket:
    """``f(x) -> exp(i <x,b>) f(x)``."""
    return GaussPacket(f.amp, f.linarr + 1j * np.asarray(b, dtype=float))


def packet_param_residual(f: GaussPacket, g: GaussPacket) -> float:
    """Relative parameter mismatch between two single packets."""
    amp = abs(f.amp - g.amp) / max(abs(f.amp), abs(g.amp), 1e-300)
    return max(amp, float(np.max(np.abs(f.linarr - g.linarr), initial=0.0)))


# ---------------------------------------------------------------------------
# Hermite functions

class HermiteCoeffs(SparseCoeffs):
    """Coefficients in the orthonormal Hermite basis ``phi_m`` of L^2(R^n)."""

    __slots__ = ()


class BargmannElem(SparseCoeffs):
    """Coefficients in the orthonormal basis ``z^m / sqrt(m!)`` of Bargmann space."""

    __slots__ = ()

    def __call__(self, z) -> np.ndarray:
        return bargmann_eval(self, z)


def _hermite_table(mmax: int, x: np.ndarray, reduced: bool) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.empty((mmax + 1,) + x.shape)
    out[0] = PI ** -0.25 * (1.0 if reduced else np.exp(-0.5 * x * x))
    if mmax >= 1:
        out[1] = sqrt(2) * x * out[0]
    for m in range(1, mmax):
        out[m + 1] = sqrt(2 / (m + 1)) * x * out[m] - sqrt(m / (m + 1)) * out[m - 1]
    return out


def hermite_functions_1d(mmax: int, x) -> np.ndarray:
    """``phi_0..phi_mmax`` at ``x`` via the normalized three-term recurrence."""
    if mmax > HERMITE_CAP:
        raise ValueError(f"Hermite index capped at {HERMITE_CAP}")
    return _hermite_table(mmax, x, reduced=False)


def hermite_reduced_1d(mmax: int, x) -> np.ndarray:
    """``phi_m(x) * exp(x^2/2)``, i.e. the normalized Hermite polynomials."""
    if mmax > HERMITE_CAP:
        raise ValueError(f"Hermite index capped at {HERMITE_CAP}")
    return _hermite_table(mmax, x, reduced=True)


def hermite_eval(m: Sequence[int], x, reduced: bool = False) -> np.ndarray:
    """``phi_m(x)`` for a multi-index ``m`` and points ``x`` of shape ``(..., n)``."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1 and len(m) > 1:
        x = x[None, :]
    vals = np.ones(x.shape[:-1] if x.ndim > 1 else x.shape)
    cols = x if x.ndim > 1 else x[..., None]
    for i, mi in enumerate(m):
        vals = vals * _hermite_table(int(mi), cols[..., i], reduced)[int(mi)]
    return vals


def hermite_coeffs_eval(c: HermiteCoeffs, x, reduced: bool = False) -> np.ndarray:
    x = np.atleast_2d(np.asarray(x, dtype=float))
    out = np.zeros(x.shape[0], dtype=complex)
    for m, v in c:
        out += v * hermite_eval(m, x, reduced=reduced)
    return out


def sigma_ladder_eval(sign: int, k: int, m: Sequence[int], x) -> np.ndarray:
    """``sigma(a^{+/-}_k) phi_m = (x_k phi_m -/+ d phi_m/dx_k) / sqrt 2`` at ``x``.

    The derivative is taken from the Hermite polynomial coefficients
    (``numpy.polynomial.hermite``), not from the ladder relations.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    vals = np.ones(x.shape[0])
    dvals = np.ones(x.shape[0])
    for i, mi in enumerate(m):
        xi = x[:, i]
        coef = np.zeros(mi + 1)
        coef[mi] = 1.0
        norm = (2.0 ** mi * factorial(mi) * sqrt(PI)) ** -0.5
        gauss = np.exp(-0.5 * xi * xi)
        h = npherm.hermval(xi, coef)
        dh = npherm.hermval(xi, npherm.hermder(coef)) if mi else np.zeros_like(xi)
        f_i = norm * gauss * h
        df_i = norm * gauss * (dh - xi * h)
        if i == k - 1:
            dvals = dvals * df_i
            vals_k = f_i
        else:
            vals = vals * f_i
            dvals = dvals * f_i
    xk = x[:, k - 1]
    phi = vals * vals_k
    if sign > 0:
        return (xk * phi - dvals) / sqrt(2)
    return (xk * phi + dvals) / sqrt(2)


def ladder_apply(sign: int, k: int, c: SparseCoeffs, cap: int = HERMITE_CAP):
    """Creation (``sign=+1``) or annihilation (``-1``) in mode ``k`` (1-based)."""
    out: dict[tuple[int, ...], complex] = {}
    j = k - 1
    for m, v in c:
        m = list(m)
        if sign > 0:
            if sum(m) + 1 > cap:
                raise ValueError(f"creation would exceed degree cap {cap}")
            factor = sqrt(m[j] + 1)
            m[j] += 1
        else:
            if m[j] == 0:
                continue
            factor = sqrt(m[j])
            m[j] -= 1
        key = tuple(m)
        out[key] = out.get(key, 0) + factor * v
    return type(c)(c.n, out)


def generating_kernel(x, y) -> complex:
    """Closed form of ``sum_m x^m/sqrt(m!) phi_m(y)``; ``x`` may be complex."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=float)
    n = x.shape[-1]
    return PI ** (-n / 4) * np.exp(-0.5 * (np.sum(x * x, -1) + np.sum(y * y, -1))
                                   + sqrt(2) * np.sum(x * y, -1))


def generating_series(x, y, max_degree: int) -> complex:
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=float)
    total = 0j
    for m in multi_indices(len(x), max_degree):
        total += np.prod(x ** np.array(m)) / sqrt(multi_factorial(m)) * hermite_eval(m, y)
    return complex(np.squeeze(total))


# ---------------------------------------------------------------------------
# Segal-Bargmann space

def bargmann_eval(F: BargmannElem, z) -> np.ndarray:
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    out = np.zeros(z.shape[0], dtype=complex)
    for m, v in F:
        out += v * np.prod(z ** np.array(m), axis=-1) / sqrt(multi_factorial(m))
    return out


def bargmann_mul_z(k: int, F: BargmannElem) -> BargmannElem:
    """Multiplication by ``z_k``, computed on raw monomial coefficients."""
    out = {}
    for m, v in F:
        raw = v / sqrt(multi_factorial(m))
        m2 = list(m)
        m2[k - 1] += 1
        out[tuple(m2)] = raw * sqrt(multi_factorial(m2))
    return BargmannElem(F.n, out)


def bargmann_d_dz(k: int, F: BargmannElem) -> BargmannElem:
    """``d/dz_k``, computed on raw monomial coefficients."""
    out = {}
    for m, v in F:
        if m[k - 1] == 0:
            continue
        raw = v / sqrt(multi_factorial(m)) * m[k - 1]
        m2 = list(m)
        m2[k - 1] -= 1
        out[tuple(m2)] = raw * sqrt(multi_factorial(m2))
    return BargmannElem(F.n, out)


def _coherent_log_params(z: np.ndarray):
    """Packet parameters of ``w_(0,z) = pi_(0,z) vacuum`` for an array of ``z``."""
    p, q = z.real, z.imag
    n = z.shape[-1]
    log_amp = -(n / 4) * np.log(PI) + 1j * np.sum(q * p, -1) - np.sum(p * p, -1)
    lin = sqrt(2) * np.conj(z)
    return log_amp, lin


def coherent_state(z: Sequence[complex], t: float = 0.0) -> GaussPacket:
    z = np.asarray(z, dtype=complex)
    return schrodinger_act(HElement(t, z), vacuum(len(z)))


class SBImage:
    """Reduced wavelet (Segal-Bargmann) image of an element of L^2(R^n).

    ``self(z)`` is ``W f(z) = <f, w_(0,z)>``; ``breve(z)`` is the analytic
    part ``exp(|z|^2/2) W f(z)``.
    """

    def __init__(self, n: int, breve: Callable[[np.ndarray], np.ndarray]):
        self.n = n
        self._breve = breve

    def breve(self, z) -> np.ndarray:
        return self._breve(np.atleast_2d(np.asarray(z, dtype=complex)))

    def __call__(self, z) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        return np.exp(-0.5 * np.sum(np.abs(z) ** 2, -1)) * self._breve(z)

    def to_bargmann(self, degree: int = 8, order: int = 20) -> BargmannElem:
        """Project the analytic part onto monomials of degree <= ``degree``."""
        return sb_project(self.breve, self.n, degree, order)


def sb_forward(f: Union[Packets, HermiteCoeffs], order: int = DEFAULT_ORDER) -> SBImage:
    """Reduced wavelet transform: closed form for packets, quadrature otherwise."""
    if isinstance(f, HermiteCoeffs):
        n = f.n
        xs, wx = gaussian_grid(n, order)
        reduced = hermite_coeffs_eval(f, xs, reduced=True) * wx * PI ** (n / 4)

        def breve(z):
            expo = -0.5 * np.sum(z * z, -1)[:, None] + sqrt(2) * (z @ xs.T)
            return np.exp(expo) @ reduced

        return SBImage(n, breve)

    terms = as_terms(f)
    n = terms[0].n

    def breve(z):
        log_amp, lin = _coherent_log_params(z)
        total = np.zeros(z.shape[0], dtype=complex)
        for a in terms:
            s = a.linarr + np.conj(lin)
            log_val = (np.log(a.amp) + np.conj(log_amp) + (n / 2) * np.log(PI)
                       + np.sum(s * s, -1) / 4 + 0.5 * np.sum(np.abs(z) ** 2, -1))
            total += np.exp(log_val)
        return total

    return SBImage(n, breve)


def sb_inverse(F: BargmannElem, degree: int | None = None, order: int = 20) -> HermiteCoeffs:
    """Quadrature realization of the Segal-Bargmann inverse, projected on ``phi_m``."""
    n = F.n
    degree = F.degree() + 2 if degree is None else degree
    xs, wx = gaussian_grid(n, degree + 1)
    zs, wz = complex_gaussian_grid(n, order)
    Fz = bargmann_eval(F, zs) * wz
    zb = np.conj(zs)
    kern = np.exp(-0.5 * np.sum(zb * zb, -1)[:, None] + sqrt(2) * (zb @ xs.T))
    reduced = PI ** (-n / 4) * (Fz @ kern)
    out = {}
    for m in multi_indices(n, degree):
        out[m] = PI ** (n / 2) * np.sum(wx * reduced * hermite_eval(m, xs, reduced=True))
    return HermiteCoeffs(n, out)


def beta_act(g: HElement, F: Callable) -> Callable:
    """``[beta_(t,z) F](u) = F(u + z) exp(i t - <conj z, u> - |z|^2/2)``."""
    z = g.zarr

    def acted(u):
        u = np.atleast_2d(np.asarray(u, dtype=complex))
        return F(u + z) * np.exp(1j * g.t - u @ np.conj(z) - 0.5 * np.sum(np.abs(z) ** 2))

    return acted


def beta_partner(g: HElement) -> HElement:
    """Element ``g'`` with ``breve(pi_g f) = beta_g' breve(f)``: ``(2t, -z)``."""
    return HElement(2 * g.t, -g.zarr)


def sb_kernel(u, v) -> complex:
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    return np.exp(np.sum(u * np.conj(v), -1))


def sb_projection_kernel(z, w) -> complex:
    """Kernel of the orthoprojection onto reduced transforms in L^2(C^n, dz)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.exp(0.5 * (-np.sum(np.abs(z) ** 2, -1) - np.sum(np.abs(w) ** 2, -1))
                  + np.sum(w * np.conj(z), -1))


def sb_project(phi: Callable, n: int, degree: int = 8, order: int = 20) -> BargmannElem:
    """Orthogonal projection of ``phi`` in L^2(C^n, Gaussian) onto analytic functions,
    truncated at total degree ``degree``."""
    zs, wz = complex_gaussian_grid(n, order)
    vals = np.asarray(phi(zs)) * wz
    out = {}
    for m in multi_indices(n, degree):
        out[m] = np.sum(vals * np.conj(np.prod(zs ** np.array(m), axis=-1))) / sqrt(
            multi_factorial(m))
    return BargmannElem(n, out)


def bargmann_cr_stencil(n: int, j: int) -> OperatorStencil:
    """``d/d(conj z_j) + z_j/2`` on functions of ``(p_1..p_n, q_1..q_n)``."""
    i = j - 1
    return OperatorStencil((
        StencilTerm(i, 0.5, 1),
        StencilTerm(n + i, 0.5j, 1),
        StencilTerm(i, lambda r: 0.5 * (r[i] + 1j * r[n + i]), 0),
    ), name=f"dbar{j}+z{j}/2")
