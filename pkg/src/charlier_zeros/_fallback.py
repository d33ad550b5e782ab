"""Pure-Python versions of the kernels in ``_kernels.pyx``.

Same signatures, same operation order: results are bitwise identical to the
compiled backend.  Binary64 work is vectorised over the evaluation points
with numpy; the MPFR recurrence goes through gmpy2 one point at a time.
"""
import gmpy2
import numpy as np
from gmpy2 import mpfr

_BIG = 2.0**300
_SMALL = 2.0**-300


def _normalize(re, im, e):
    m = np.maximum(np.abs(re), np.abs(im))
    _, ex = np.frexp(m)
    ex = ex.astype(np.int64)
    return np.ldexp(re, -ex), np.ldexp(im, -ex), np.where(m == 0.0, 0, e + ex)


def eval_f64(zr, zi, n, a, rescale=True):
    x = np.ascontiguousarray(zr, dtype=float)
    y = np.ascontiguousarray(zi, dtype=float)
    p0r = np.zeros_like(x)
    p0i = np.zeros_like(x)
    p1r = np.ones_like(x)
    p1i = np.zeros_like(x)
    d0r = np.zeros_like(x)
    d0i = np.zeros_like(x)
    d1r = np.zeros_like(x)
    d1i = np.zeros_like(x)
    e = np.zeros(x.shape, dtype=np.int64)
    a = float(a)
    # without rescaling, overflow to inf/nan is the documented outcome
    with np.errstate(over="ignore", invalid="ignore"):
        p1r, p1i, d1r, d1i, e = _f64_loop(x, y, n, a, rescale, p0r, p0i, p1r, p1i,
                                          d0r, d0i, d1r, d1i, e)
    vr, vi, ve = _normalize(p1r, p1i, e)
    dr, di, de = _normalize(d1r, d1i, e)
    return vr, vi, ve, dr, di, de


def _f64_loop(x, y, n, a, rescale, p0r, p0i, p1r, p1i, d0r, d0i, d1r, d1i, e):
    for k in range(n):
        cr = x - float(k + 1) / n
        b = (a * float(k)) / n
        p2r = (cr * p1r - y * p1i) + b * p0r
        p2i = (cr * p1i + y * p1r) + b * p0i
        d2r = ((cr * d1r - y * d1i) + b * d0r) + p1r
        d2i = ((cr * d1i + y * d1r) + b * d0i) + p1i
        p0r, p0i, p1r, p1i = p1r, p1i, p2r, p2i
        d0r, d0i, d1r, d1i = d1r, d1i, d2r, d2i
        if rescale:
            big = np.maximum(np.maximum(np.abs(p1r), np.abs(p1i)),
                             np.maximum(np.abs(d1r), np.abs(d1i)))
            mask = (big > _BIG) | ((big < _SMALL) & (big > 0.0))
            if mask.any():
                _, ex = np.frexp(big)
                ex = np.where(mask, ex, 0).astype(np.int64)
                s = np.ldexp(1.0, -ex)
                p0r = p0r * s
                p0i = p0i * s
                p1r = p1r * s
                p1i = p1i * s
                d0r = d0r * s
                d0i = d0i * s
                d1r = d1r * s
                d1i = d1i * s
                e = e + ex
    return p1r, p1i, d1r, d1i, e


def _mp_out(re, im):
    if re == 0 and im == 0:
        return 0.0, 0.0, 0
    if re == 0:
        e = gmpy2.get_exp(im)
    elif im == 0:
        e = gmpy2.get_exp(re)
    else:
        e = max(gmpy2.get_exp(re), gmpy2.get_exp(im))
    return float(gmpy2.mul_2exp(re, -e)), float(gmpy2.mul_2exp(im, -e)), e


def eval_mp(zr, zi, n, a, prec):
    if n < 1:
        raise ValueError("n must be positive")
    m = len(zr)
    vr = np.empty(m)
    vi = np.empty(m)
    ve = np.empty(m, dtype=np.int64)
    dr = np.empty(m)
    di = np.empty(m)
    de = np.empty(m, dtype=np.int64)
    with gmpy2.context(precision=int(prec)):
        av = mpfr(float(a))
        shift = [mpfr(k + 1) / n for k in range(n)]
        coup = [(av * k) / n for k in range(n)]
        zero = mpfr(0)
        one = mpfr(1)
        for i in range(m):
            x = mpfr(float(zr[i]))
            y = mpfr(float(zi[i]))
            p0r = p0i = p1i = d0r = d0i = d1r = d1i = zero
            p1r = one
            for k in range(n):
                cr = x - shift[k]
                b = coup[k]
                p2r = (cr * p1r - y * p1i) + b * p0r
                p2i = (cr * p1i + y * p1r) + b * p0i
                d2r = ((cr * d1r - y * d1i) + b * d0r) + p1r
                d2i = ((cr * d1i + y * d1r) + b * d0i) + p1i
                p0r, p0i, p1r, p1i = p1r, p1i, p2r, p2i
                d0r, d0i, d1r, d1i = d1r, d1i, d2r, d2i
            vr[i], vi[i], ve[i] = _mp_out(p1r, p1i)
            dr[i], di[i], de[i] = _mp_out(d1r, d1i)
    return vr, vi, ve, dr, di, de


def aberth_sums(zr, zi):
    zr = np.ascontiguousarray(zr, dtype=float)
    zi = np.ascontiguousarray(zi, dtype=float)
    m = zr.shape[0]
    sr = np.zeros(m)
    si = np.zeros(m)
    with np.errstate(divide="ignore", invalid="ignore"):
        for j in range(m):
            ur = zr - zr[j]
            ui = zi - zi[j]
            den = ur * ur + ui * ui
            tr = ur / den
            ti = ui / den
            tr[j] = 0.0
            ti[j] = 0.0
            sr = sr + tr
            si = si - ti
    return sr, si
