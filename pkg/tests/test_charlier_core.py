import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from charlier_zeros import (DomainError, EvaluationAtRootError, ScaledComplex,
                            contour_pn_oracle, empirical_cauchy, eval_pn, eval_pn_many,
                            jacobi_matrix, sampled_jacobi, tridiagonal_det)
from charlier_zeros.precision import precision_mode, working_precision
from conftest import rel

A_VALUES = st.sampled_from([0.05, 1 / 12, 0.3, 1.0, 4.0])


def rect_point(a):
    h = 2 * math.sqrt(a)
    return st.tuples(st.floats(0, 1), st.floats(-h, h)).map(lambda p: complex(*p))


@st.composite
def z_n_a(draw, n_max=60):
    a = draw(A_VALUES)
    return draw(rect_point(a)), draw(st.integers(1, n_max)), a


# -- examples ---------------------------------------------------------------

def test_eval_examples():
    ev = eval_pn(0.5, 1, 1.0)
    assert ev.value.to_complex() == -0.5 and ev.derivative.to_complex() == 1
    ev = eval_pn(0.0, 2, 1.0)
    assert ev.value.to_complex() == 1.0 and ev.derivative.to_complex() == -1.5
    r = 0.75 + 1j * math.sqrt(7) / 4
    assert abs(eval_pn(r, 2, 1.0).value.to_complex()) <= 1e-12


def test_empirical_cauchy_examples():
    assert empirical_cauchy(2, 1, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert empirical_cauchy(2, 2, 1.0) == pytest.approx(0.625, abs=1e-15)


def test_empirical_cauchy_at_root():
    with pytest.raises(EvaluationAtRootError):
        empirical_cauchy(1.0, 1, 1.0)
    with pytest.raises(EvaluationAtRootError):
        empirical_cauchy(0.75 + 1j * math.sqrt(7) / 4, 2, 1.0)
    # a configurable floor: a point 1e-10 from the root is rejected at floor 1e-8
    with pytest.raises(EvaluationAtRootError):
        empirical_cauchy(1.0 + 1e-10, 1, 1.0, floor=1e-8)
    assert empirical_cauchy(1.0 + 1e-10, 1, 1.0) == pytest.approx(1e10, rel=1e-5)


def test_jacobi_examples():
    J = jacobi_matrix(1, 1.0)
    assert list(J.diag) == [1] and len(J.offdiag) == 0
    J = jacobi_matrix(2, 1.0)
    assert np.allclose(J.diag, [0.5, 1.0]) and np.allclose(J.offdiag, [1j * math.sqrt(0.5)])
    assert tridiagonal_det(J, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert eval_pn(0.0, 2, 1.0).value.to_complex() == pytest.approx(1.0)


def test_sampled_jacobi_examples():
    T = sampled_jacobi(2, lambda x: 0.0, lambda x: x)
    assert np.allclose(T.diag, [0.5, 1.0]) and np.allclose(T.offdiag, [0.0])
    T = sampled_jacobi(3, lambda x: 1j * math.sqrt(x), lambda x: x)
    J = jacobi_matrix(3, 1.0)
    assert np.allclose(T.diag, J.diag, atol=0) and np.allclose(T.offdiag, J.offdiag, atol=0)
    T = sampled_jacobi(1, lambda x: 7.0, lambda x: 3.0 + x)
    assert list(T.diag) == [4.0] and len(T.offdiag) == 0


@pytest.mark.parametrize("n", [1, 5, 40])
@pytest.mark.parametrize("a", [0.2, 1.0, 3.0])
def test_sampled_reproduces_jacobi(n, a):
    T = sampled_jacobi(n, lambda x: 1j * math.sqrt(a * x), lambda x: x)
    J = jacobi_matrix(n, a)
    assert np.allclose(T.to_dense(), J.to_dense(), rtol=1e-15, atol=0)


def test_jacobi_structure():
    J = jacobi_matrix(7, 0.4)
    assert np.all(J.diag.imag == 0)
    assert np.all(J.offdiag.real == 0) and np.all(J.offdiag.imag > 0)
    D = J.to_dense()
    assert np.array_equal(D, D.T)


def test_contour_examples():
    assert contour_pn_oracle(0.5, 1, 1.0, 0.5, 256) == pytest.approx(-0.5, rel=1e-10)
    z = 0.5 + 0.5j
    ref = 5**5 * eval_pn(z, 5, 1.0).value.to_complex()
    assert rel(contour_pn_oracle(z, 5, 1.0, 0.5, 512), ref) <= 1e-9
    assert contour_pn_oracle(0.0, 2, 1.0, 0.3, 256) == pytest.approx(4.0, rel=1e-10)


def test_input_validation():
    for bad in [(0.5, 0, 1.0), (0.5, -1, 1.0), (0.5, 2, 0.0), (0.5, 2, -1.0),
                (complex(math.nan, 0), 2, 1.0), (complex(math.inf, 0), 2, 1.0),
                (0.5, 2, math.inf), (0.5, 2.5, 1.0)]:
        with pytest.raises(DomainError):
            eval_pn(*bad)
    for bad in [(0, 1.0), (3, 0.0), (3, -2.0)]:
        with pytest.raises(DomainError):
            jacobi_matrix(*bad)
    with pytest.raises(DomainError):
        sampled_jacobi(0, lambda x: 0, lambda x: x)
    with pytest.raises(DomainError):
        contour_pn_oracle(0.5, 2, 1.0, radius=1.0)
    with pytest.raises(DomainError):
        contour_pn_oracle(0.5, 2, 1.0, quad_points=32)


# -- ScaledComplex ----------------------------------------------------------

@given(st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e300))
def test_scaled_roundtrip(w):
    s = ScaledComplex.from_complex(w)
    # one shared exponent: the smaller component keeps precision relative to |w|
    assert abs(s.to_complex() - w) <= 2.3e-308 + 1e-16 * abs(w)
    if w.imag == 0 or w.real == 0:
        assert s.to_complex() == w
    if w != 0:
        assert 0.5 <= abs(s.mantissa) < 2
        # abs() of a subnormal complex rounds, so the reference goes through mpmath
        ref = float(mp.log(mp.hypot(mp.mpf(w.real), mp.mpf(w.imag))))
        assert s.log_abs() == pytest.approx(ref, rel=1e-12, abs=1e-12)
    else:
        assert s.is_zero()


def test_scaled_rejects_unnormalized():
    with pytest.raises(DomainError):
        ScaledComplex(4.0 + 0j, 0)
    with pytest.raises(DomainError):
        ScaledComplex(complex(math.nan, 0), 0)
    with pytest.raises(ZeroDivisionError):
        ScaledComplex(1.0 + 0j, 0) / ScaledComplex(0j, 0)


def test_scaled_extreme_range():
    # degree 2000 leaves the binary64 range in both directions
    for z in (-3.0, 0.05 + 0.01j):
        ev = eval_pn(z, 2000, 1.0)
        assert 0.5 <= abs(ev.value.mantissa) < 2
        assert abs(ev.value.exponent) > 600
        assert math.isfinite(ev.value.log_abs())
        assert math.isfinite(abs(ev.log_derivative()))
    # outside the rectangle log|p_n| is a plain sum of logs to leading order
    ev = eval_pn(-3.0, 2000, 1.0)
    assert ev.value.log_abs() > 2000 * math.log(3.0)


# -- invariants -------------------------------------------------------------

@given(z_n_a(200))
def test_conjugation_symmetry(args):
    z, n, a = args
    u, v = eval_pn(z, n, a), eval_pn(z.conjugate(), n, a)
    assert u.value.exponent == v.value.exponent
    assert abs(u.value.mantissa.conjugate() - v.value.mantissa) <= 1e-12 * abs(u.value.mantissa)
    assert abs(u.derivative.mantissa.conjugate() - v.derivative.mantissa) \
        <= 1e-12 * abs(u.derivative.mantissa)


@given(z_n_a(8))
def test_determinant_identity_small(args):
    z, n, a = args
    det = tridiagonal_det(jacobi_matrix(n, a), z)
    val = eval_pn(z, n, a).value.to_complex()
    assert abs(det - val) <= 1e-10 * max(abs(val), 1e-300) + 1e-14


@given(st.integers(1, 8), A_VALUES, st.floats(0, 1), st.floats(-1, 1))
def test_determinant_against_mpmath(n, a, x, s):
    z = complex(x, s * 2 * math.sqrt(a))
    ref = oracles.det_mp(z, n, a)
    assert abs(eval_pn(z, n, a).value.to_complex() - ref) <= 1e-10 * abs(ref) + 1e-14


@given(st.integers(1, 400), st.floats(0.01, 100))
def test_trace_identity(n, a):
    assert abs(jacobi_matrix(n, a).trace() - (n + 1) / 2) <= 1e-12 * max(1, n)


@given(z_n_a(10))
def test_contour_oracle_equivalence(args):
    z, n, a = args
    # the circle must enclose the origin only; the 1/(1+xi)^{...} factor is
    # analytic in |xi| < 1
    ref = n**n * eval_pn(z, n, a).value.to_complex()
    got = contour_pn_oracle(z, n, a)
    assert abs(got - ref) <= 1e-8 * abs(ref) + 1e-12 * n**n


@given(z_n_a(30))
def test_rescale_disabled_matches(args):
    z, n, a = args
    # same binary64 kernel with and without the per-step renormalization
    u = eval_pn(z, n, a, prec=53)
    v = eval_pn(z, n, a, rescale=False)
    for p, q in ((u.value, v.value), (u.derivative, v.derivative)):
        pc, qc = p.to_complex(), q.to_complex()
        assert abs(pc - qc) <= 1e-14 * max(abs(pc), 1e-300)


def test_rescale_needed_at_large_n():
    # |p_600(-3)| is beyond binary64: only the renormalized recurrence survives
    assert eval_pn(-3.0, 600, 1.0, prec=53).value.log_abs() > math.log(np.finfo(float).max)
    raw = eval_pn_many(np.array([-3.0]), 600, 1.0, rescale=False)
    assert not np.all(np.isfinite(raw.value))


@pytest.mark.parametrize("a", [1 / 12, 1.0, 10.0])
def test_forward_error_vs_mpmath_n200(a):
    rng = np.random.default_rng(7)
    h = 2 * math.sqrt(a)
    z = rng.uniform(0, 1, 12) + 1j * rng.uniform(-h, h, 12)
    b = eval_pn_many(z, 200, a)
    for k, zk in enumerate(z):
        v, d = b[k]
        ref_v, ref_d = oracles.pn_mp(complex(zk), 200, a, dps=120)
        assert rel(v.to_complex(), ref_v) <= 1e-10
        assert rel(d.to_complex(), ref_d) <= 1e-10


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_recurrence_against_exact_coefficients(n):
    a = 0.25
    c = [float(x) for x in oracles.pn_coefficients(n, a)]
    for z in (0.3 + 0.2j, 1.0, -0.5j):
        assert eval_pn(z, n, a).value.to_complex() == pytest.approx(np.polyval(c, z),
                                                                    rel=1e-13, abs=1e-15)
        assert eval_pn(z, n, a).derivative.to_complex() == pytest.approx(
            np.polyval(np.polyder(c), z), rel=1e-13, abs=1e-15)


def test_batch_matches_scalar():
    z = np.array([0.1 + 0.4j, 0.7 - 1.1j, 0.95])
    b = eval_pn_many(z, 37, 0.6)
    for k in range(3):
        ev = eval_pn(z[k], 37, 0.6)
        assert b[k] == (ev.value, ev.derivative)
    np.testing.assert_allclose(b.log_derivative(), [eval_pn(x, 37, 0.6).log_derivative()
                                                    for x in z], rtol=1e-14)


def test_precision_modes(monkeypatch):
    std = working_precision(100, 1.0, "standard")
    assert working_precision(100, 1.0, "extended") == 2 * max(std, 64)
    monkeypatch.setenv("CHARLIER_PRECISION", "extended")
    assert precision_mode() == "extended"
    monkeypatch.setenv("CHARLIER_PRECISION", "bogus")
    with pytest.raises(DomainError):
        precision_mode()


def test_extended_precision_agrees():
    z = 0.4 + 0.3j
    u = eval_pn(z, 150, 1.0)
    v = eval_pn(z, 150, 1.0, prec=2 * working_precision(150, 1.0))
    assert rel(u.value.to_complex(), v.value.to_complex()) <= 1e-12


def test_cauchy_approaches_limit():
    from charlier_zeros.saddle import limiting_cauchy
    z = 0.5 + 1j * 2 * 0.5
    errs = [abs(empirical_cauchy(z, n, 1.0) - limiting_cauchy(z, 1.0)) for n in (100, 200, 400)]
    assert errs[0] > errs[1] > errs[2]
    assert cmath.isfinite(limiting_cauchy(z, 1.0))
