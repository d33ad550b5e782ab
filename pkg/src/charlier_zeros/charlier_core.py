"""Evaluation of the rescaled Charlier polynomial and its Jacobi matrix.

p_n(z; a) = a^n P_n^C(z; a) satisfies

    p_{k+1} = (z - (k+1)/n) p_k + (a k / n) p_{k-1},   p_0 = 1, p_{-1} = 0,

and equals det(z - J_n(a)) for the tridiagonal J_n(a) with diagonal
(k+1)/n and off-diagonal i*sqrt(a(k+1)/n).  Values are carried as a complex
mantissa times a power of two so that degree-n evaluations never overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _backend
from .errors import DomainError, EvaluationAtRootError, NonConvergenceError
from .precision import F64, working_precision

ROOT_FLOOR = 1e-14


@dataclass(frozen=True)
class ScaledComplex:
    """``mantissa * 2**exponent`` with 0.5 <= |mantissa| < 2 unless zero."""

    mantissa: complex
    exponent: int

    def __post_init__(self):
        m = abs(self.mantissa)
        if not math.isfinite(m):
            raise DomainError("non-finite mantissa")
        if m != 0.0 and not (0.5 <= m < 2.0):
            raise DomainError(f"mantissa {self.mantissa} not normalized")

    @classmethod
    def from_complex(cls, w: complex) -> "ScaledComplex":
        w = complex(w)
        big = max(abs(w.real), abs(w.imag))
        if big == 0.0:
            return cls(0j, 0)
        _, e = math.frexp(big)
        return cls(complex(math.ldexp(w.real, -e), math.ldexp(w.imag, -e)), e)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def to_complex(self) -> complex:
        """Plain complex value; may overflow to inf or underflow to 0."""
        m, e = self.mantissa, self.exponent
        try:
            return complex(math.ldexp(m.real, e), math.ldexp(m.imag, e))
        except OverflowError:
            return complex(math.copysign(math.inf, m.real) if m.real else 0.0,
                           math.copysign(math.inf, m.imag) if m.imag else 0.0)

    def log_abs(self) -> float:
        """Natural log of the modulus, exact in range."""
        if self.is_zero():
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent * math.log(2.0)

    def __truediv__(self, other: "ScaledComplex") -> complex:
        if other.is_zero():
            raise ZeroDivisionError("division by a zero ScaledComplex")
        q = self.mantissa / other.mantissa
        return q * 2.0 ** (self.exponent - other.exponent)


@dataclass(frozen=True)
class PolyEval:
    value: ScaledComplex
    derivative: ScaledComplex
    n: int
    a: float
    z: complex

    def newton_step(self) -> complex:
        """p/p' with the scale exponents cancelled."""
        return self.value / self.derivative

    def log_derivative(self) -> complex:
        """p'/p with the scale exponents cancelled."""
        if self.value.is_zero():
            raise EvaluationAtRootError(f"p_n vanishes at z={self.z}")
        return self.derivative / self.value


@dataclass(frozen=True)
class BatchEval:
    """Vectorized counterpart of :class:`PolyEval` (arrays of mantissas/exponents)."""

    value: np.ndarray
    value_exp: np.ndarray
    derivative: np.ndarray
    derivative_exp: np.ndarray

    def newton_step(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return (self.value / self.derivative) * np.exp2(
                (self.value_exp - self.derivative_exp).astype(float))

    def log_derivative(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return (self.derivative / self.value) * np.exp2(
                (self.derivative_exp - self.value_exp).astype(float))

    def log_abs(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.value)) + self.value_exp * math.log(2.0)

    def __getitem__(self, i) -> tuple[ScaledComplex, ScaledComplex]:
        return (ScaledComplex(complex(self.value[i]), int(self.value_exp[i])),
                ScaledComplex(complex(self.derivative[i]), int(self.derivative_exp[i])))


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Complex symmetric tridiagonal matrix; ``offdiag[k]`` couples k and k+1."""

    n: int
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if self.n < 1 or len(self.diag) != self.n or len(self.offdiag) != self.n - 1:
            raise DomainError("inconsistent tridiagonal dimensions")

    def to_dense(self) -> np.ndarray:
        return (np.diag(self.diag.astype(complex))
                + np.diag(self.offdiag.astype(complex), 1)
                + np.diag(self.offdiag.astype(complex), -1))

    def trace(self) -> complex:
        return complex(np.sum(self.diag))


def _check_na(n, a):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    a = float(a)
    if not (math.isfinite(a) and a > 0.0):
        raise DomainError(f"a must be a positive finite real, got {a!r}")
    return int(n), a


def eval_pn_many(z, n: int, a: float, *, prec: int | None = None,
                 rescale: bool = True) -> BatchEval:
    """Evaluate p_n and p_n' at every point of ``z``.

    ``prec=None`` picks the working precision automatically (see
    :mod:`charlier_zeros.precision`); 53 selects the binary64 kernel.
    ``rescale=False`` disables the per-step renormalization (binary64 only,
    for testing the scaling at small n).
    """
    n, a = _check_na(n, a)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(z)):
        raise DomainError("z must be finite")
    if prec is None:
        prec = working_precision(n, a)
    zr = np.ascontiguousarray(z.real.ravel())
    zi = np.ascontiguousarray(z.imag.ravel())
    if prec <= F64 or not rescale:
        out = _backend.eval_f64(zr, zi, n, a, rescale)
    else:
        out = _backend.eval_mp(zr, zi, n, a, int(prec))
    vr, vi, ve, dr, di, de = out
    return BatchEval(vr + 1j * vi, np.asarray(ve), dr + 1j * di, np.asarray(de))


def eval_pn(z: complex, n: int, a: float, *, prec: int | None = None,
            rescale: bool = True) -> PolyEval:
    """p_n(z; a) and its derivative as scaled complex numbers.

    Examples
    --------
    >>> ev = eval_pn(0.0, 2, 1.0)
    >>> ev.value.to_complex(), ev.derivative.to_complex()
    ((1+0j), (-1.5+0j))
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("z must be finite")
    b = eval_pn_many(np.array([z]), n, a, prec=prec, rescale=rescale)
    if not rescale:
        v = complex(b.value[0]) * 2.0 ** int(b.value_exp[0])
        d = complex(b.derivative[0]) * 2.0 ** int(b.derivative_exp[0])
        return PolyEval(ScaledComplex.from_complex(v), ScaledComplex.from_complex(d),
                        int(n), float(a), z)
    v, d = b[0]
    return PolyEval(v, d, int(n), float(a), z)


def empirical_cauchy(z: complex, n: int, a: float, *, floor: float = ROOT_FLOOR,
                     prec: int | None = None) -> complex:
    """Cauchy transform p_n'/(n p_n) of the root-counting measure at ``z``.

    Raises :class:`EvaluationAtRootError` when ``z`` is within ``floor`` (in
    Newton-step units, relative to max(1, |z|)) of a root.
    """
    ev = eval_pn(z, n, a, prec=prec)
    if ev.value.is_zero():
        raise EvaluationAtRootError(f"p_n vanishes at z={z}")
    if not ev.derivative.is_zero() and abs(ev.newton_step()) < floor * max(1.0, abs(z)):
        raise EvaluationAtRootError(f"z={z} is numerically a root of p_n")
    return ev.log_derivative() / ev.n


def jacobi_matrix(n: int, a: float) -> TridiagonalMatrix:
    n, a = _check_na(n, a)
    k = np.arange(1, n + 1, dtype=float)
    diag = (k / n).astype(complex)
    off = 1j * np.sqrt(a * k[:-1] / n)
    return TridiagonalMatrix(n, diag, off)


def sampled_jacobi(n: int, alpha: Callable[[float], complex],
                   beta: Callable[[float], complex]) -> TridiagonalMatrix:
    """Tridiagonal matrix with diag beta((k+1)/n) and offdiag alpha((k+1)/n).

    ``beta(x) = x`` and ``alpha(x) = 1j*sqrt(a*x)`` give ``jacobi_matrix(n, a)``.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    diag = np.array([complex(beta((k + 1) / n)) for k in range(n)])
    off = np.array([complex(alpha((k + 1) / n)) for k in range(n - 1)], dtype=complex)
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
        raise DomainError("alpha/beta returned non-finite entries")
    return TridiagonalMatrix(n, diag, off)


def tridiagonal_det(T: TridiagonalMatrix, z: complex) -> complex:
    """det(z - T) by the continuant recursion (plain complex arithmetic)."""
    d_prev, d = 1.0 + 0j, complex(z) - T.diag[0]
    for k in range(1, T.n):
        d_prev, d = d, (complex(z) - T.diag[k]) * d - T.offdiag[k - 1] ** 2 * d_prev
    return complex(d)


def _contour_sum(z: complex, n: int, a: float, radius: float, m: int) -> tuple[complex, float]:
    theta = 2.0 * np.pi * np.arange(m) / m
    xi = radius * np.exp(1j * theta)
    # n! * xi * g(xi) * exp(-n f) with g = 1/(xi(1+xi)); the n! undoes the
    # 1/n! of the exponential generating function; xi^-n is single valued
    logt = -n * (a - z) * np.log1p(xi) + n * a * xi - np.log1p(xi)
    vals = float(math.factorial(n)) * np.exp(logt) * xi ** (-n)
    return complex(np.mean(vals)), float(np.max(np.abs(vals)))


def contour_pn_oracle(z: complex, n: int, a: float, radius: float = 0.5,
                      quad_points: int = 256, tol: float = 1e-10) -> complex:
    """a^n n^n P_n^C(z; a) from the generating-function contour integral.

    Trapezoidal rule on |xi| = radius, doubling ``quad_points`` until two
    successive results agree to ``tol`` (relative).  Comparable with
    ``n**n * eval_pn(z, n, a).value``.
    """
    n, a = _check_na(n, a)
    z = complex(z)
    if not 0.0 < radius < 1.0:
        raise DomainError("radius must lie in (0, 1)")
    if quad_points < 64:
        raise DomainError("quad_points must be at least 64")
    prev, _ = _contour_sum(z, n, a, radius, quad_points)
    m = quad_points
    for _ in range(2):
        m *= 2
        cur, scale = _contour_sum(z, n, a, radius, m)
        # round-off floor: the mean cannot resolve below eps * max|integrand|
        if abs(cur - prev) <= tol * abs(cur) + 64 * np.finfo(float).eps * scale:
            return cur
        prev = cur
    raise NonConvergenceError(f"contour quadrature did not stabilize (n={n}, z={z})")

