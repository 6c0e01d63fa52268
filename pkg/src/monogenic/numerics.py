"""Gauss-Hermite quadrature against normalized Gaussian measures, and
finite-difference application of first/second order differential operators.

All Gaussian measures are probability measures: ``pi^{-m/2} e^{-|x|^2} dx``
on R^m and ``pi^{-n} e^{-|z|^2} dz`` on C^n (= R^{2n}, real parts first).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence, Union

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .clifford import Multivector, array_conjugate, array_product

DEFAULT_ORDER = 40
MAX_ORDER = 200
MAX_GRID_DIM = 4
DEFAULT_STEP = 1e-4
RESIDUAL_TOL = 1e-6
_CHUNK = 1 << 16


class QuadratureCapError(ValueError):
    pass


@dataclass(frozen=True)
class QuadRule:
    """Nodes/weights for the weight function ``e^{-x^2}`` on R."""

    order: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> complex:
        return complex(np.sum(self.weights * f(self.nodes)))


@lru_cache(maxsize=None)
def hermite_rule(order: int) -> QuadRule:
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"quadrature order must be in 1..{MAX_ORDER}, got {order}")
    nodes, weights = hermgauss(order)
    # symmetrize exactly so odd moments vanish to rounding
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadRule(order, nodes, weights)


def gaussian_grid(m: int, order: int = DEFAULT_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Tensor grid for the normalized measure on R^m: ``(points (P, m), weights (P,))``."""
    if m > MAX_GRID_DIM:
        raise QuadratureCapError(f"tensor grids capped at {MAX_GRID_DIM} real dimensions, got {m}")
    rule = hermite_rule(order)
    w1 = rule.weights / np.sqrt(np.pi)
    if m == 0:
        return np.zeros((1, 0)), np.ones(1)
    mesh = np.meshgrid(*([rule.nodes] * m), indexing="ij")
    points = np.stack([g.ravel() for g in mesh], axis=-1)
    wmesh = np.meshgrid(*([w1] * m), indexing="ij")
    weights = np.prod(np.stack([g.ravel() for g in wmesh], axis=-1), axis=-1)
    return points, weights


def complex_gaussian_grid(n: int, order: int = DEFAULT_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Grid for ``pi^{-n} e^{-|z|^2} dz`` on C^n: ``(z (P, n) complex, weights (P,))``."""
    pts, w = gaussian_grid(2 * n, order)
    return pts[:, :n] + 1j * pts[:, n:], w


def _pairwise_sum(parts: list):
    while len(parts) > 1:
        nxt = [parts[i] + parts[i + 1] for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


def gaussian_integrate(F: Callable[[np.ndarray], np.ndarray], m: int,
                       order: int = DEFAULT_ORDER) -> np.ndarray:
    """Integral of ``F`` against the normalized Gaussian on R^m.

    ``F`` maps points ``(P, m)`` to values ``(P, ...)``.  The grid is summed
    in fixed chunks and the partial sums reduced pairwise, so results are
    reproducible for a given order.
    """
    points, weights = gaussian_grid(m, order)
    parts = []
    for start in range(0, len(weights), _CHUNK):
        sl = slice(start, start + _CHUNK)
        vals = np.asarray(F(points[sl]))
        w = weights[sl].reshape((-1,) + (1,) * (vals.ndim - 1))
        parts.append(np.sum(w * vals, axis=0))
    return _pairwise_sum(parts)


def gaussian_inner(f: Callable, g: Callable, m: int, order: int = DEFAULT_ORDER,
                   clifford_dim: int | None = None) -> Union[complex, Multivector]:
    """``int conj(f) g`` against the normalized Gaussian on R^m.

    Scalar integrands return a complex number.  With ``clifford_dim`` set,
    ``f`` and ``g`` return coefficient arrays ``(P, 2**n)``, the bar is
    Clifford conjugation and the result is a :class:`Multivector`.
    """
    if clifford_dim is None:
        val = gaussian_integrate(lambda x: np.conj(f(x)) * g(x), m, order)
        return complex(val)
    n = clifford_dim
    val = gaussian_integrate(
        lambda x: array_product(array_conjugate(f(x), n), g(x), n), m, order)
    return Multivector.from_array(n, val)


# ---------------------------------------------------------------------------
# finite differences

Coefficient = Union[complex, float, Multivector, Callable[[np.ndarray], object]]


@dataclass(frozen=True)
class StencilTerm:
    var: int
    coeff: Coefficient
    order: int = 1

    def coefficient_at(self, point: np.ndarray):
        return self.coeff(point) if callable(self.coeff) else self.coeff


@dataclass(frozen=True)
class OperatorStencil:
    """Linear differential operator ``sum coeff(point) * d^order/dvar^order``.

    Coefficients multiply from the left; order 0 means plain multiplication.
    """

    terms: tuple[StencilTerm, ...]
    name: str = ""

    def __add__(self, other: "OperatorStencil") -> "OperatorStencil":
        return OperatorStencil(self.terms + other.terms, f"{self.name}+{other.name}")


def _partial(F: Callable, point: np.ndarray, var: int, order: int, h: float):
    if order == 0:
        return F(point)
    step = np.zeros_like(point, dtype=float)
    step[var] = h
    if order == 1:
        return (F(point + step) - F(point - step)) / (2 * h)
    if order == 2:
        return (F(point + step) - 2 * F(point) + F(point - step)) / (h * h)
    raise ValueError("only derivative orders 0, 1, 2 are supported")


def finite_diff_apply(op: OperatorStencil, F: Callable, point: Sequence[float],
                      h: float = DEFAULT_STEP):
    """Central-difference value of ``op F`` at ``point``; O(h^2) accurate."""
    if h <= 0:
        raise ValueError("step must be positive")
    point = np.asarray(point, dtype=float)
    total = None
    for term in op.terms:
        piece = term.coefficient_at(point) * _partial(F, point, term.var, term.order, h)
        total = piece if total is None else total + piece
    return 0.0 if total is None else total


def stencil_function(op: OperatorStencil, F: Callable, h: float = DEFAULT_STEP) -> Callable:
    """``op F`` as a new function of the point, so operators can be nested."""
    return lambda point: finite_diff_apply(op, F, point, h)


def magnitude(value) -> float:
    if isinstance(value, Multivector):
        return value.max_abs()
    return float(np.max(np.abs(value)))
