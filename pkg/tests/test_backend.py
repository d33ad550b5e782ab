import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from charlier_zeros import _backend

needs_cython = pytest.mark.skipif("cython" not in _backend.available(),
                                  reason="compiled extension not built")


def _pts(seed, m, a):
    rng = np.random.default_rng(seed)
    h = 2 * np.sqrt(a)
    return rng.uniform(-0.1, 1.1, m), rng.uniform(-h, h, m)


def _same(u, v):
    # overflow without rescaling yields NaN in both backends at the same places
    return all(np.array_equal(np.asarray(p), np.asarray(q), equal_nan=True) for p, q in zip(u, v))


@needs_cython
@given(st.integers(1, 2000), st.sampled_from([0.05, 1 / 12, 1.0, 10.0]), st.integers(0, 2**16),
       st.booleans())
def test_f64_bitwise(n, a, seed, rescale):
    zr, zi = _pts(seed, 16, a)
    c, p = _backend.kernels("cython"), _backend.kernels("python")
    assert _same(c.eval_f64(zr, zi, n, a, rescale), p.eval_f64(zr, zi, n, a, rescale))


@needs_cython
@given(st.integers(1, 300), st.sampled_from([1 / 12, 1.0]), st.integers(0, 2**16),
       st.sampled_from([64, 113, 160, 288]))
def test_mp_bitwise(n, a, seed, prec):
    zr, zi = _pts(seed, 4, a)
    c, p = _backend.kernels("cython"), _backend.kernels("python")
    assert _same(c.eval_mp(zr, zi, n, a, prec), p.eval_mp(zr, zi, n, a, prec))


@needs_cython
@given(st.integers(2, 200), st.integers(0, 2**16))
def test_aberth_sums_bitwise(m, seed):
    zr, zi = _pts(seed, m, 1.0)
    c, p = _backend.kernels("cython"), _backend.kernels("python")
    assert _same(c.aberth_sums(zr, zi), p.aberth_sums(zr, zi))


def test_aberth_sums_definition():
    zr, zi = _pts(3, 9, 1.0)
    z = zr + 1j * zi
    sr, si = _backend.aberth_sums(zr, zi)
    ref = [sum(1 / (z[j] - z[k]) for k in range(9) if k != j) for j in range(9)]
    np.testing.assert_allclose(sr + 1j * si, ref, rtol=1e-13)


def test_unknown_backend():
    with pytest.raises(ValueError):
        _backend.kernels("fortran")


def _run(env_backend, code):
    env = dict(os.environ, CHARLIER_BACKEND=env_backend)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    return out.stdout


def test_env_selects_fallback():
    assert _run("python", "import charlier_zeros; print(charlier_zeros.BACKEND)").strip() \
        == "python"


@needs_cython
def test_roots_identical_across_backends():
    code = ("from charlier_zeros import find_roots; r = find_roots(60, 1/12, 3); "
            "print([repr(complex(z)) for z in r.roots]); print(r.iterations, r.precision)")
    assert _run("python", code) == _run("", code)
