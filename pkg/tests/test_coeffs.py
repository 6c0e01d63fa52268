from hypothesis import given, strategies as st

from monogenic.coeffs import SparseCoeffs

idx = st.tuples(st.integers(0, 4), st.integers(0, 4))
cplx = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
elems = st.dictionaries(idx, cplx, max_size=6).map(lambda d: SparseCoeffs(2, d))


@given(elems, elems)
def test_inner_is_hermitian(a, b):
    assert abs(a.inner(b) - b.inner(a).conjugate()) <= 1e-12


@given(elems, elems, cplx)
def test_linearity(a, b, c):
    assert ((a + b) * c).max_abs_diff(a * c + b * c) <= 1e-12
    assert (a - a).norm() == 0


@given(elems)
def test_norm_and_truncate(a):
    assert abs(a.norm() ** 2 - a.inner(a).real) <= 1e-10
    t = a.truncate(2)
    assert t.degree() <= 2
    assert t.norm() <= a.norm() + 1e-12
    assert hash(a) == hash(SparseCoeffs(2, a.coeffs))
