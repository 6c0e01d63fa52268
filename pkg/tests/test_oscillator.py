import numpy as np
import pytest
from hypothesis import given, strategies as st

from monogenic import oscillator as osc
from monogenic.cpoly import multi_indices
from monogenic.numerics import finite_diff_apply, gaussian_grid, magnitude
from monogenic.verify import hermite_ladder_factors, hermite_orthonormality

from strategies import complexes, h_elements, packets, real, reals

dims = st.integers(1, 3)


@pytest.mark.parametrize("n", [1, 2])
def test_hermite_orthonormal(n):
    assert hermite_orthonormality(n, 8, 40) <= 1e-10


def test_ladder_factors_by_quadrature():
    assert hermite_ladder_factors(8, 40) <= 1e-9


@given(dims.flatmap(lambda n: st.tuples(h_elements(n), h_elements(n), h_elements(n))))
def test_heisenberg_group_law(ghk):
    g, h, k = ghk
    a, b = osc.h_mul(osc.h_mul(g, h), k), osc.h_mul(g, osc.h_mul(h, k))
    assert abs(a.t - b.t) <= 1e-14 and np.allclose(a.zarr, b.zarr, atol=1e-15)
    e = osc.h_mul(g, osc.h_inv(g))
    assert abs(e.t) <= 1e-15 and not np.any(e.zarr)


@given(dims.flatmap(lambda n: st.tuples(h_elements(n), h_elements(n), packets(n))))
def test_schrodinger_homomorphism(ghf):
    g, h, f = ghf
    lhs = osc.schrodinger_act(osc.h_mul(g, h), f)
    rhs = osc.schrodinger_act(g, osc.schrodinger_act(h, f))
    assert osc.packet_param_residual(lhs, rhs) <= 1e-12


@given(dims.flatmap(lambda n: st.tuples(h_elements(n), packets(n), packets(n))))
def test_schrodinger_unitary(gfh):
    g, f, h = gfh
    before = osc.packet_inner(f, h)
    after = osc.packet_inner(osc.schrodinger_act(g, f), osc.schrodinger_act(g, h))
    assert abs(after - before) <= 1e-10 * max(1.0, abs(before))


@given(h_elements(1), packets(1))
def test_unitarity_by_quadrature(g, f):
    gf = osc.schrodinger_act(g, f)
    x, w = gaussian_grid(1, 60)
    quad = np.sqrt(np.pi) * np.sum(w * np.abs(gf(x)) ** 2 * np.exp(x[:, 0] ** 2))
    assert abs(quad - osc.packet_inner(f, f)) <= 1e-8 * osc.packet_inner(f, f).real


@given(dims.flatmap(lambda n: st.tuples(packets(n), reals(n), reals(n))))
def test_weyl_relation(fcb):
    f, c, b = fcb
    lhs = osc.weyl_shift(c, osc.weyl_modulate(b, f))
    rhs = osc.weyl_modulate(b, osc.weyl_shift(c, f)).scaled(np.exp(1j * c @ b))
    assert osc.packet_param_residual(lhs, rhs) <= 1e-12


@given(real)
def test_centre_acts_by_phase(t):
    f0 = osc.vacuum(2)
    moved = osc.schrodinger_act(osc.HElement(t, [0, 0]), f0)
    assert osc.packet_param_residual(moved, f0.scaled(np.exp(2j * t))) <= 1e-15


@given(st.integers(0, 10), st.integers(1, 2))
def test_ladder_commutator_and_adjoint(m, k):
    c = osc.HermiteCoeffs.basis((m, 2))
    up = lambda v: osc.ladder_apply(1, k, v)
    down = lambda v: osc.ladder_apply(-1, k, v)
    assert (down(up(c)) - up(down(c))).max_abs_diff(c) <= 1e-12
    assert abs(up(c).inner(up(c)) - c.inner(down(up(c)))) <= 1e-12


@given(st.tuples(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5)))
def test_generating_function(xy):
    x, y = np.array([xy[0]]), np.array([xy[1]])
    assert abs(osc.generating_series(x, y, 30) - osc.generating_kernel(x, y)) <= 1e-8


def test_vacuum_image():
    z = np.array([[0.3 + 0.2j], [-1.0 + 0.5j]])
    img = osc.sb_forward(osc.vacuum(1, normalized=False))(z)
    assert np.allclose(img, np.pi ** 0.25 * np.exp(-0.5 * np.abs(z[:, 0]) ** 2), atol=1e-13)


@pytest.mark.parametrize("m", range(6))
def test_hermite_maps_to_monomial(m):
    got = osc.sb_forward(osc.HermiteCoeffs.basis((m,))).to_bargmann(8, 20)
    assert got.max_abs_diff(osc.BargmannElem.basis((m,))) <= 1e-8


def test_sb_round_trip():
    f = osc.HermiteCoeffs(1, {(0,): 0.5, (2,): 1j})
    back = osc.sb_inverse(osc.sb_forward(f).to_bargmann(6, 20), degree=6)
    assert back.max_abs_diff(f) <= 1e-6


@given(h_elements(1), packets(1), complexes(1))
def test_intertwining_with_partner(g, f, u):
    lhs = osc.sb_forward(osc.schrodinger_act(g, f)).breve(u)
    rhs = osc.beta_act(osc.beta_partner(g), osc.sb_forward(f).breve)(u)
    assert abs(lhs[0] - rhs[0]) <= 1e-8 * max(1.0, abs(lhs[0]))


@given(packets(1), reals(2))
def test_image_satisfies_cr_equation(f, a):
    image = osc.sb_forward(f)
    F = lambda pt: complex(image(np.array([[pt[0] + 1j * pt[1]]]))[0])
    assert magnitude(finite_diff_apply(osc.bargmann_cr_stencil(1, 1), F, a, 1e-4)) <= 1e-6


def test_projection():
    assert osc.sb_project(lambda w: np.conj(w[:, 0]), 1, 6, 20).norm() <= 1e-12
    F = osc.BargmannElem(1, {(1,): 1.0, (3,): 0.5j})
    assert osc.sb_project(F, 1, 8, 20).max_abs_diff(F) <= 1e-10


@given(complexes(1))
def test_bargmann_reproducing_kernel(u):
    from monogenic.numerics import complex_gaussian_grid
    zs, w = complex_gaussian_grid(1, 20)
    F = osc.BargmannElem(1, {(0,): 0.3, (2,): 1.0})
    assert abs(np.sum(w * osc.sb_kernel(u, zs) * F(zs)) - F(u[None])[0]) <= 1e-8


@given(complexes(2))
def test_bargmann_ladder_adjoint(z):
    F = osc.BargmannElem(2, {m: 1.0 + 0.1 * sum(m) for m in multi_indices(2, 3)})
    up = osc.bargmann_mul_z(1, F)
    assert np.allclose(up(z[None]), z[0] * F(z[None]))
    assert osc.bargmann_d_dz(1, up).max_abs_diff(F + osc.bargmann_mul_z(1, osc.bargmann_d_dz(1, F))) <= 1e-12
