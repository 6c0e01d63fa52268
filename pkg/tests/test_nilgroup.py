import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monogenic import nilgroup as nil
from monogenic import oscillator as osc
from monogenic.clifford import Multivector
from monogenic.numerics import finite_diff_apply, magnitude
from monogenic.verify import _bracket, vpacket_param_residual

from strategies import g_elements, real, reals, vpackets

dims = st.integers(1, 3)


@given(dims.flatmap(lambda n: st.tuples(g_elements(n), g_elements(n), g_elements(n))))
def test_group_law(ghk):
    g, h, k = ghk
    assert np.allclose(nil.g_mul(nil.g_mul(g, h), k).flat(), nil.g_mul(g, nil.g_mul(h, k)).flat(),
                       atol=1e-14)
    assert np.allclose(nil.g_mul(g, nil.g_inv(g)).flat(), 0, atol=1e-15)
    centre = nil.GElement(g.t, 0, np.zeros(g.n))
    assert np.allclose(nil.g_mul(centre, h).flat(), nil.g_mul(h, centre).flat(), atol=1e-15)


@given(g_elements(1), g_elements(1))
def test_g1_is_heisenberg(g, h):
    a = nil.g1_to_h1(nil.g_mul(g, h))
    b = osc.h_mul(nil.g1_to_h1(g), nil.g1_to_h1(h))
    assert abs(a.t - b.t) <= 1e-15 and np.allclose(a.zarr, b.zarr)


@given(dims.flatmap(lambda n: st.tuples(g_elements(n), g_elements(n), vpackets(n))))
def test_rho_homomorphism(ghf):
    g, h, f = ghf
    lhs = nil.rho_act(nil.g_mul(g, h), f)
    rhs = nil.rho_act(g, nil.rho_act(h, f))
    assert vpacket_param_residual(lhs, rhs) <= 1e-12


@given(dims.flatmap(lambda n: st.tuples(g_elements(n), vpackets(n), vpackets(n))))
def test_rho_unitary(gfh):
    g, f, h = gfh
    before = nil.cliff_inner(f, h)
    after = nil.cliff_inner(nil.rho_act(g, f), nil.rho_act(g, h))
    assert (after - before).max_abs() <= 1e-10 * max(1.0, before.max_abs())


@settings(max_examples=10)
@given(g_elements(2), vpackets(2), vpackets(2))
def test_closed_inner_matches_quadrature(g, f, h):
    f = nil.rho_act(g, f)
    exact = nil.cliff_inner(f, h)
    assert (nil.cliff_inner(f, h, quadrature=True, order=60) - exact).max_abs() <= 1e-8 * max(
        1.0, exact.max_abs())


@given(dims.flatmap(vpackets))
def test_inner_positive(f):
    s = nil.cliff_inner(f, f)
    assert s.scalar_part.real >= 0
    assert abs(s.scalar_part.real - nil.vpacket_norm(f) ** 2) <= 1e-10


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vacuum(n):
    v = nil.nil_vacuum(n)
    assert nil.a_minus(v).is_zero()
    assert (nil.cliff_inner(v, v) - n).max_abs() <= 1e-14
    for j in range(1, n + 1):
        assert nil.a_minus(nil.nil_vacuum_component(n, j)).is_zero()


@given(dims.flatmap(vpackets))
def test_a_minus_does_not_kill_generic_packets(f):
    if np.allclose([t.lin for c in f.comps for t in c], 0):
        return
    assert not nil.a_minus(f).is_zero()


@given(dims.flatmap(lambda n: st.tuples(vpackets(n), st.integers(1, n), st.integers(1, n))))
def test_ladder_commutators(fjk):
    f, j, k = fjk
    T = lambda i, g: nil.left_e(i, nil.drho_apply("T", g, i))
    c = nil.a_plus(j, nil.a_minus(f)) - nil.a_minus(nil.a_plus(j, f))
    assert vpacket_param_residual(c, T(j, f).scale(-2)) <= 1e-10
    c = nil.a_plus(j, nil.a_plus(k, f)) - nil.a_plus(k, nil.a_plus(j, f))
    assert vpacket_param_residual(c, T(k, f).scale(2) - T(j, f).scale(2)) <= 1e-10


@given(dims.flatmap(lambda n: st.tuples(vpackets(n), st.integers(1, n))))
def test_derived_bracket_and_skew(fj):
    f, j = fj
    pq = (nil.drho_apply("P", nil.drho_apply("Q", f, j))
          - nil.drho_apply("Q", nil.drho_apply("P", f), j))
    assert vpacket_param_residual(pq, nil.drho_apply("T", f, j)) <= 1e-10
    for d in (nil.drho_apply("P", f), nil.drho_apply("Q", f, j), nil.drho_apply("T", f, j)):
        assert (nil.cliff_inner(d, f) + nil.cliff_inner(f, d)).max_abs() <= 1e-10


def test_left_e_rejects_mixed_support():
    with pytest.raises(ValueError):
        nil.left_e(1, nil.nil_vacuum(2))


def smooth(n):
    return lambda x: np.sin(x[0]) * np.exp(0.3 * x[n]) + x[-1] ** 2 * x[0] * x[n] + np.cos(
        x[n - 1] * x[n + 1])


@given(dims.flatmap(lambda n: st.tuples(st.just(n), reals(2 * n + 1), st.integers(1, n))))
def test_vector_fields(nxj):
    n, pt, j = nxj
    G = smooth(n)
    P, Q, T = nil.vector_field("P", n), nil.vector_field("Q", n, j), nil.vector_field("T", n, j)
    assert abs(_bracket(P, Q, G, 1e-4)(pt) - finite_diff_apply(T, G, pt, 1e-4)) <= 1e-6
    for right in (nil.vector_field("P*", n), nil.vector_field("Q*", n, j)):
        for left in (P, Q):
            assert abs(_bracket(left, right, G, 1e-4)(pt)) <= 1e-6


@settings(max_examples=15)
@given(dims.flatmap(lambda n: st.tuples(reals(n), reals(n + 1), g_elements(n))))
def test_wavelet_closed_form(tag):
    tp, a, g = tag
    fa = nil.rho_act(nil.GElement(tp, a[0], a[1:]), nil.nil_vacuum(len(tp)))
    closed = nil.g_wavelet_closed(tp, a, g.t, nil.omega_coords(g))
    assert (nil.g_wavelet(fa, g) - closed).max_abs() <= 1e-8


@pytest.mark.parametrize("n", [1, 2, 3])
def test_wavelet_origin(n):
    z = np.zeros(n)
    assert nil.g_wavelet_closed(z, np.zeros(n + 1), z, np.zeros(n + 1)) == Multivector.scalar(n, n)


@given(dims.flatmap(lambda n: st.tuples(reals(n), reals(n + 1), reals(2 * n + 1))))
def test_wavelet_images_are_monogenic(tap):
    tp, a, pt = tap
    n = len(tp)
    F = nil.wavelet_image(tp, a)
    assert magnitude(finite_diff_apply(nil.dirac_g_stencil(n), F, 1.5 * pt, 1e-4)) <= 1e-6


def test_dirac_detects_non_monogenic():
    control = finite_diff_apply(nil.dirac_g_stencil(2), lambda x: Multivector.scalar(2, x[2]),
                                np.array([0.1, 0.2, 0.3, 0.4, 0.5]), 1e-4)
    assert abs((control - 1).max_abs()) <= 1e-6


@given(dims.flatmap(lambda n: st.tuples(reals(n + 1), reals(n + 1))))
def test_reduced_transform(az):
    a, z = az
    n = len(a) - 1
    assert (nil.reduced_wavelet(a, z) - nil.renormalized_restriction(a, z)).max_abs() <= 1e-12
    F = lambda zz: nil.reduced_wavelet(a, zz)
    assert magnitude(finite_diff_apply(nil.reduced_dirac_stencil(n), F, z, 1e-4)) <= 1e-6


@given(dims.flatmap(lambda n: st.tuples(reals(n + 1), reals(n + 1))))
def test_section_is_additive(ab):
    a, b = ab
    assert np.allclose(nil.omega_coords(nil.g_mul(nil.section(a), nil.section(b))), a + b, atol=1e-15)
