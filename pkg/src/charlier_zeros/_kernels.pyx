# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: the p_n / p_n' recurrence in binary64 and in MPFR, and
the pairwise Aberth sums.

Every arithmetic step here is mirrored one-to-one in ``_fallback.py``; the
two backends must agree bit for bit, so do not reorder operations in one
without the other.
"""
import numpy as np

from libc.math cimport frexp, ldexp, fabs
from libc.stdlib cimport malloc, free


cdef extern from "mpfr.h" nogil:
    ctypedef struct __mpfr_struct:
        pass
    ctypedef __mpfr_struct mpfr_t[1]
    ctypedef __mpfr_struct *mpfr_ptr
    ctypedef long mpfr_prec_t
    ctypedef long mpfr_exp_t
    ctypedef enum mpfr_rnd_t:
        MPFR_RNDN
    void mpfr_init2(mpfr_ptr x, mpfr_prec_t prec)
    void mpfr_clear(mpfr_ptr x)
    int mpfr_set_d(mpfr_ptr rop, double op, mpfr_rnd_t rnd)
    int mpfr_set_ui(mpfr_ptr rop, unsigned long op, mpfr_rnd_t rnd)
    void mpfr_swap(mpfr_ptr x, mpfr_ptr y)
    int mpfr_add(mpfr_ptr rop, mpfr_ptr a, mpfr_ptr b, mpfr_rnd_t rnd)
    int mpfr_sub(mpfr_ptr rop, mpfr_ptr a, mpfr_ptr b, mpfr_rnd_t rnd)
    int mpfr_mul(mpfr_ptr rop, mpfr_ptr a, mpfr_ptr b, mpfr_rnd_t rnd)
    int mpfr_mul_ui(mpfr_ptr rop, mpfr_ptr a, unsigned long b, mpfr_rnd_t rnd)
    int mpfr_div_ui(mpfr_ptr rop, mpfr_ptr a, unsigned long b, mpfr_rnd_t rnd)
    int mpfr_mul_2si(mpfr_ptr rop, mpfr_ptr a, long b, mpfr_rnd_t rnd)
    int mpfr_zero_p(mpfr_ptr x)
    mpfr_exp_t mpfr_get_exp(mpfr_ptr x)
    double mpfr_get_d(mpfr_ptr x, mpfr_rnd_t rnd)


cdef double _BIG = ldexp(1.0, 300)
cdef double _SMALL = ldexp(1.0, -300)


cdef inline void _normalize(double re, double im, long e,
                            double *mr, double *mi, long *me) noexcept nogil:
    cdef double m = fabs(re)
    cdef int ex
    if fabs(im) > m:
        m = fabs(im)
    if m == 0.0:
        mr[0] = 0.0
        mi[0] = 0.0
        me[0] = 0
        return
    frexp(m, &ex)
    mr[0] = ldexp(re, -ex)
    mi[0] = ldexp(im, -ex)
    me[0] = e + ex


def eval_f64(double[::1] zr, double[::1] zi, long n, double a, bint rescale=True):
    """Binary64 recurrence for (p_n, p_n') at each z, with power-of-two rescaling.

    Returns ``(vr, vi, ve, dr, di, de)``: normalised mantissas and exponents of
    the value and of the derivative.
    """
    cdef Py_ssize_t m = zr.shape[0], i
    cdef long k, e
    cdef int ex
    cdef double x, y, cr, b, s
    cdef double p0r, p0i, p1r, p1i, p2r, p2i
    cdef double d0r, d0i, d1r, d1i, d2r, d2i, big
    vr_a = np.empty(m); vi_a = np.empty(m); ve_a = np.empty(m, dtype=np.int64)
    dr_a = np.empty(m); di_a = np.empty(m); de_a = np.empty(m, dtype=np.int64)
    cdef double[::1] vr = vr_a, vi = vi_a, dr = dr_a, di = di_a
    cdef long long[::1] ve = ve_a, de = de_a
    cdef double mr, mi
    cdef long me
    with nogil:
        for i in range(m):
            x = zr[i]
            y = zi[i]
            p0r = 0.0; p0i = 0.0; p1r = 1.0; p1i = 0.0
            d0r = 0.0; d0i = 0.0; d1r = 0.0; d1i = 0.0
            e = 0
            for k in range(n):
                cr = x - (<double>(k + 1)) / n
                b = (a * <double>k) / n
                p2r = (cr * p1r - y * p1i) + b * p0r
                p2i = (cr * p1i + y * p1r) + b * p0i
                d2r = ((cr * d1r - y * d1i) + b * d0r) + p1r
                d2i = ((cr * d1i + y * d1r) + b * d0i) + p1i
                p0r = p1r; p0i = p1i; p1r = p2r; p1i = p2i
                d0r = d1r; d0i = d1i; d1r = d2r; d1i = d2i
                if rescale:
                    big = fabs(p1r)
                    if fabs(p1i) > big: big = fabs(p1i)
                    if fabs(d1r) > big: big = fabs(d1r)
                    if fabs(d1i) > big: big = fabs(d1i)
                    if big > _BIG or (big < _SMALL and big > 0.0):
                        frexp(big, &ex)
                        s = ldexp(1.0, -ex)
                        p0r = p0r * s; p0i = p0i * s; p1r = p1r * s; p1i = p1i * s
                        d0r = d0r * s; d0i = d0i * s; d1r = d1r * s; d1i = d1i * s
                        e = e + ex
            _normalize(p1r, p1i, e, &mr, &mi, &me)
            vr[i] = mr; vi[i] = mi; ve[i] = me
            _normalize(d1r, d1i, e, &mr, &mi, &me)
            dr[i] = mr; di[i] = mi; de[i] = me
    return vr_a, vi_a, ve_a, dr_a, di_a, de_a


cdef inline void _mp_out(mpfr_ptr re, mpfr_ptr im, mpfr_ptr tmp,
                         double *mr, double *mi, long *me) noexcept nogil:
    cdef long e, e2
    cdef bint zr = mpfr_zero_p(re), zi = mpfr_zero_p(im)
    if zr and zi:
        mr[0] = 0.0; mi[0] = 0.0; me[0] = 0
        return
    if zr:
        e = mpfr_get_exp(im)
    elif zi:
        e = mpfr_get_exp(re)
    else:
        e = mpfr_get_exp(re)
        e2 = mpfr_get_exp(im)
        if e2 > e:
            e = e2
    mpfr_mul_2si(tmp, re, -e, MPFR_RNDN)
    mr[0] = mpfr_get_d(tmp, MPFR_RNDN)
    mpfr_mul_2si(tmp, im, -e, MPFR_RNDN)
    mi[0] = mpfr_get_d(tmp, MPFR_RNDN)
    me[0] = e


def eval_mp(double[::1] zr, double[::1] zi, long n, double a, long prec):
    """MPFR recurrence for (p_n, p_n') at ``prec`` bits; same output layout as
    :func:`eval_f64`.  The inputs z and a are taken exactly as given."""
    cdef Py_ssize_t m = zr.shape[0], i
    cdef long k
    vr_a = np.empty(m); vi_a = np.empty(m); ve_a = np.empty(m, dtype=np.int64)
    dr_a = np.empty(m); di_a = np.empty(m); de_a = np.empty(m, dtype=np.int64)
    cdef double[::1] vr = vr_a, vi = vi_a, dr = dr_a, di = di_a
    cdef long long[::1] ve = ve_a, de = de_a
    cdef double mr, mi
    cdef long me
    if n < 1:
        raise ValueError("n must be positive")
    # shift[k] = (k+1)/n, coup[k] = a*k/n
    cdef __mpfr_struct *shift = <__mpfr_struct *> malloc(n * sizeof(__mpfr_struct))
    cdef __mpfr_struct *coup = <__mpfr_struct *> malloc(n * sizeof(__mpfr_struct))
    cdef mpfr_t av, x, y, cr, p0r, p0i, p1r, p1i, p2r, p2i
    cdef mpfr_t d0r, d0i, d1r, d1i, d2r, d2i, t1, t2, t3
    if shift == NULL or coup == NULL:
        free(shift); free(coup)
        raise MemoryError()
    for k in range(n):
        mpfr_init2(&shift[k], prec)
        mpfr_init2(&coup[k], prec)
    mpfr_init2(av, prec); mpfr_init2(x, prec); mpfr_init2(y, prec); mpfr_init2(cr, prec)
    mpfr_init2(p0r, prec); mpfr_init2(p0i, prec); mpfr_init2(p1r, prec); mpfr_init2(p1i, prec)
    mpfr_init2(p2r, prec); mpfr_init2(p2i, prec)
    mpfr_init2(d0r, prec); mpfr_init2(d0i, prec); mpfr_init2(d1r, prec); mpfr_init2(d1i, prec)
    mpfr_init2(d2r, prec); mpfr_init2(d2i, prec)
    mpfr_init2(t1, prec); mpfr_init2(t2, prec); mpfr_init2(t3, prec)
    with nogil:
        mpfr_set_d(av, a, MPFR_RNDN)
        for k in range(n):
            mpfr_set_ui(&shift[k], k + 1, MPFR_RNDN)
            mpfr_div_ui(&shift[k], &shift[k], n, MPFR_RNDN)
            mpfr_mul_ui(&coup[k], av, k, MPFR_RNDN)
            mpfr_div_ui(&coup[k], &coup[k], n, MPFR_RNDN)
        for i in range(m):
            mpfr_set_d(x, zr[i], MPFR_RNDN)
            mpfr_set_d(y, zi[i], MPFR_RNDN)
            mpfr_set_ui(p0r, 0, MPFR_RNDN); mpfr_set_ui(p0i, 0, MPFR_RNDN)
            mpfr_set_ui(p1r, 1, MPFR_RNDN); mpfr_set_ui(p1i, 0, MPFR_RNDN)
            mpfr_set_ui(d0r, 0, MPFR_RNDN); mpfr_set_ui(d0i, 0, MPFR_RNDN)
            mpfr_set_ui(d1r, 0, MPFR_RNDN); mpfr_set_ui(d1i, 0, MPFR_RNDN)
            for k in range(n):
                mpfr_sub(cr, x, &shift[k], MPFR_RNDN)
                # p2 = c*p1 + b*p0
                mpfr_mul(t1, cr, p1r, MPFR_RNDN)
                mpfr_mul(t2, y, p1i, MPFR_RNDN)
                mpfr_sub(p2r, t1, t2, MPFR_RNDN)
                mpfr_mul(t3, &coup[k], p0r, MPFR_RNDN)
                mpfr_add(p2r, p2r, t3, MPFR_RNDN)
                mpfr_mul(t1, cr, p1i, MPFR_RNDN)
                mpfr_mul(t2, y, p1r, MPFR_RNDN)
                mpfr_add(p2i, t1, t2, MPFR_RNDN)
                mpfr_mul(t3, &coup[k], p0i, MPFR_RNDN)
                mpfr_add(p2i, p2i, t3, MPFR_RNDN)
                # d2 = c*d1 + b*d0 + p1
                mpfr_mul(t1, cr, d1r, MPFR_RNDN)
                mpfr_mul(t2, y, d1i, MPFR_RNDN)
                mpfr_sub(d2r, t1, t2, MPFR_RNDN)
                mpfr_mul(t3, &coup[k], d0r, MPFR_RNDN)
                mpfr_add(d2r, d2r, t3, MPFR_RNDN)
                mpfr_add(d2r, d2r, p1r, MPFR_RNDN)
                mpfr_mul(t1, cr, d1i, MPFR_RNDN)
                mpfr_mul(t2, y, d1r, MPFR_RNDN)
                mpfr_add(d2i, t1, t2, MPFR_RNDN)
                mpfr_mul(t3, &coup[k], d0i, MPFR_RNDN)
                mpfr_add(d2i, d2i, t3, MPFR_RNDN)
                mpfr_add(d2i, d2i, p1i, MPFR_RNDN)
                mpfr_swap(p0r, p1r); mpfr_swap(p1r, p2r)
                mpfr_swap(p0i, p1i); mpfr_swap(p1i, p2i)
                mpfr_swap(d0r, d1r); mpfr_swap(d1r, d2r)
                mpfr_swap(d0i, d1i); mpfr_swap(d1i, d2i)
            _mp_out(p1r, p1i, t1, &mr, &mi, &me)
            vr[i] = mr; vi[i] = mi; ve[i] = me
            _mp_out(d1r, d1i, t1, &mr, &mi, &me)
            dr[i] = mr; di[i] = mi; de[i] = me
    for k in range(n):
        mpfr_clear(&shift[k])
        mpfr_clear(&coup[k])
    free(shift); free(coup)
    mpfr_clear(av); mpfr_clear(x); mpfr_clear(y); mpfr_clear(cr)
    mpfr_clear(p0r); mpfr_clear(p0i); mpfr_clear(p1r); mpfr_clear(p1i)
    mpfr_clear(p2r); mpfr_clear(p2i)
    mpfr_clear(d0r); mpfr_clear(d0i); mpfr_clear(d1r); mpfr_clear(d1i)
    mpfr_clear(d2r); mpfr_clear(d2i)
    mpfr_clear(t1); mpfr_clear(t2); mpfr_clear(t3)
    return vr_a, vi_a, ve_a, dr_a, di_a, de_a


def aberth_sums(double[::1] zr, double[::1] zi):
    """S_i = sum_{j != i} 1 / (z_i - z_j), accumulated in index order."""
    cdef Py_ssize_t m = zr.shape[0], i, j
    cdef double sr, si, ur, ui, den
    sr_a = np.empty(m); si_a = np.empty(m)
    cdef double[::1] osr = sr_a, osi = si_a
    with nogil:
        for i in range(m):
            sr = 0.0
            si = 0.0
            for j in range(m):
                if j == i:
                    continue
                ur = zr[i] - zr[j]
                ui = zi[i] - zi[j]
                den = ur * ur + ui * ui
                sr = sr + ur / den
                si = si - ui / den
            osr[i] = sr
            osi[i] = si
    return sr_a, si_a
