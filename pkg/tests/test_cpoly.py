import numpy as np
import pytest
from hypothesis import given, strategies as st

from monogenic.clifford import Multivector
from monogenic.cpoly import (CliffPoly, DegreeCapError, NotMonogenicError, ck_extend, ck_product,
                             dirac_apply, dirac_stencil, exp_series, is_monogenic, mono_exp,
                             monogenic_variable, multi_factorial, multi_indices, poly_diff, poly_mul, poly_shift,
                             spatial_monomial, v_monomial)
from monogenic.numerics import finite_diff_apply, magnitude

small = st.floats(-1, 1, allow_nan=False)


def multi_index(n, max_deg):
    return st.lists(st.integers(0, max_deg), min_size=n, max_size=n).filter(
        lambda k: sum(k) <= max_deg)


def spatial_polys(n, max_deg=3):
    term = st.tuples(multi_index(n, max_deg), small)
    return st.lists(term, min_size=1, max_size=4).map(
        lambda ts: sum((spatial_monomial(k, c) for k, c in ts), CliffPoly(n)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_v_monogenic_and_restriction(n):
    for k in multi_indices(n, 5):
        v = v_monomial(k)
        assert dirac_apply(v).max_abs_coeff() <= 1e-12
        assert v.restrict().allclose(spatial_monomial(k, 1 / np.sqrt(multi_factorial(k))), atol=1e-15)


@given(st.integers(1, 3).flatmap(spatial_polys))
def test_ck_extension_is_monogenic_and_restricts(p):
    f = ck_extend(p)
    assert is_monogenic(f)
    assert f.restrict().allclose(p, atol=1e-12)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(spatial_polys(n, 2), spatial_polys(n, 2))))
def test_ck_product_restricts_to_product(pq):
    p, q = pq
    f = ck_product(ck_extend(p), ck_extend(q))
    assert is_monogenic(f)
    assert f.restrict().allclose(poly_mul(p, q), atol=1e-12)


def test_ck_product_rejects_non_monogenic():
    x0 = CliffPoly.variable(1, 0)
    with pytest.raises(NotMonogenicError):
        ck_product(x0, x0)


def test_monogenic_variable_form():
    n = 2
    for j in (1, 2):
        want = CliffPoly.variable(n, j) - CliffPoly.variable(n, 0) * Multivector.basis(n, j)
        assert monogenic_variable(n, j).allclose(want, atol=0)


@given(st.integers(1, 3).flatmap(spatial_polys), st.integers(0, 3))
def test_poly_diff_linear_and_lowers_degree(p, var):
    var = min(var, p.n)
    d = poly_diff(p, var)
    assert d.degree() <= max(p.degree() - 1, 0)
    assert poly_diff(p + p, var).allclose(d * 2.0)


@given(st.lists(small, min_size=2, max_size=2), st.lists(small, min_size=3, max_size=3))
def test_poly_shift_evaluates_at_shifted_point(c, x):
    p = ck_extend(spatial_monomial((2, 1), 1.0) + spatial_monomial((0, 3), -0.5))
    shifted = poly_shift(p, c)
    y = np.array(x) + np.array([0.0] + c)
    assert shifted(x).allclose(p(y), atol=1e-12)


@given(st.lists(small, min_size=1, max_size=3), st.data())
def test_exp_series_matches_closed_form(u, data):
    x = data.draw(st.lists(st.floats(-0.5, 0.5), min_size=len(u) + 1, max_size=len(u) + 1))
    assert exp_series(u, 12)(x).allclose(mono_exp(u, x), atol=1e-9)


@given(st.lists(small, min_size=1, max_size=3), st.data())
def test_exp_monogenic(u, data):
    x = data.draw(st.lists(small, min_size=len(u) + 1, max_size=len(u) + 1))
    res = magnitude(finite_diff_apply(dirac_stencil(len(u)), lambda p: mono_exp(u, p), x, 1e-4))
    assert res <= 1e-6


def test_exp_at_origin_is_one():
    assert mono_exp([1.0], [0.0, 0.0]) == Multivector.scalar(1, 1.0)


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        v_monomial((13,))
    with pytest.raises(ValueError):
        v_monomial((-1,))


def test_evaluate_vectorised_matches_pointwise():
    p = v_monomial((2, 1))
    pts = np.random.default_rng(1).normal(size=(5, 3))
    vals = p.evaluate(pts)
    for pt, row in zip(pts, vals):
        assert np.allclose(p(pt).to_array(), row)
