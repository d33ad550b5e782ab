"""Phase function, saddle points and the Omega+/Omega-/Omega0 partition.

    f(xi; z) = (a - z) log(1 + xi) + log(xi) - a xi,
    xi_pm(z; a) = (1 - z +- sqrt((1 - z)^2 + 4a)) / (2a),

with principal branches throughout.  ``g(z) = Re f(xi_+) - Re f(xi_-)``
decides which saddle dominates; its zero set in the upper rectangle is the
attractor arc.  All functions accept numpy arrays and broadcast.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import AttractorError, BranchCutError, DomainError


class RegionTag(enum.Enum):
    OmegaPlus = 1
    OmegaMinus = -1
    OmegaZero = 0


@dataclass(frozen=True)
class SaddlePair:
    xi_plus: complex
    xi_minus: complex
    z: complex
    a: float

    def residuals(self) -> tuple[float, float]:
        """|a xi^2 + (z-1) xi - 1| at both saddles."""
        q = lambda xi: abs(self.a * xi * xi + (self.z - 1.0) * xi - 1.0)
        return q(self.xi_plus), q(self.xi_minus)


def _check_a(a):
    a = float(a)
    if not (math.isfinite(a) and a > 0.0):
        raise DomainError(f"a must be a positive finite real, got {a!r}")
    return a


def _cplx(z):
    # adding +0 turns -0.0 into +0.0, so points on a cut take the upper side
    return np.asarray(z, dtype=complex) + 0j


def _out(v, like):
    return complex(v) if np.ndim(like) == 0 else v


def saddle_xi(z, a):
    """Arrays (xi_plus, xi_minus) for any array of z."""
    a = _check_a(a)
    z = _cplx(z)
    s = np.sqrt((1.0 - z) ** 2 + 4.0 * a)
    return (1.0 - z + s) / (2.0 * a) + 0j, (1.0 - z - s) / (2.0 * a) + 0j


def saddle_points(z: complex, a: float) -> SaddlePair:
    """Both critical points of f(.; z).

    Examples
    --------
    >>> saddle_points(1.0, 1.0).xi_plus, saddle_points(1.0, 1.0).xi_minus
    ((1+0j), (-1+0j))
    """
    xp, xm = saddle_xi(z, a)
    return SaddlePair(complex(xp), complex(xm), complex(z), float(a))


def f_eval(xi, z, a, allow_cut: bool = False):
    """Principal-branch phase function f(xi; z).

    With ``allow_cut=True`` points with 1 + xi on the negative axis are
    evaluated as limits from the upper side, and 0*log(0) at xi = -1,
    z = a is taken as 0.
    """
    a = _check_a(a)
    xi = _cplx(xi)
    z = _cplx(z)
    on_cut = (xi.imag == 0.0) & (xi.real <= -1.0)
    if np.any(xi == 0) or (not allow_cut and np.any(on_cut)):
        raise BranchCutError("xi on (-inf, -1] or at 0")
    c = a - z
    with np.errstate(divide="ignore", invalid="ignore"):
        t = c * np.log1p(xi)
    t = np.where(c == 0, 0j, t)
    if np.any(~np.isfinite(t)):
        raise BranchCutError("f is singular at xi = -1 unless z = a")
    return _out(t + np.log(xi) - a * xi, xi)


def f_derivatives(xi, z, a):
    """(f', f'') with respect to xi."""
    xi = _cplx(xi)
    z = _cplx(z)
    d1 = (a - z) / (1.0 + xi) + 1.0 / xi - a
    d2 = -(a - z) / (1.0 + xi) ** 2 - 1.0 / xi**2
    return _out(d1, xi), _out(d2, xi)


def _re_f(xi, z, a):
    # Re[(a - z) log(1 + xi)] = (a - x) log|1 + xi| + y arg(1 + xi)
    x, y = z.real, z.imag
    w = 1.0 + xi
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (a - x) * np.log(np.abs(w))
    t = np.where(a - x == 0.0, 0.0, t)
    return t + y * np.angle(w) + np.log(np.abs(xi)) - a * xi.real


def g_value(z, a):
    """Re f(xi_+) - Re f(xi_-), continuous through the kink at z = a.

    Examples
    --------
    >>> round(g_value(1.0, 1.0), 12)
    -2.0
    """
    a = _check_a(a)
    z = _cplx(z)
    xp, xm = saddle_xi(z, a)
    g = _re_f(xp, z, a) - _re_f(xm, z, a)
    g = np.where(z == a, -math.log(a) - a - 1.0, g)
    return float(g) if np.ndim(g) == 0 else g


def default_tol(z, a):
    xp, xm = saddle_xi(z, a)
    fp = f_eval(xp, z, a, allow_cut=True)
    fm = f_eval(xm, z, a, allow_cut=True)
    return 1e-12 * (1.0 + np.abs(fp) + np.abs(fm))


def region_codes(z, a, tol=None):
    """+1 / -1 / 0 for Omega+, Omega-, Omega0 (array version of :func:`classify`)."""
    g = np.asarray(g_value(z, a))
    if tol is None:
        tol = default_tol(z, a)
    return np.where(g > tol, 1, np.where(g < -tol, -1, 0))


def classify(z: complex, a: float, tol: float | None = None) -> RegionTag:
    """Which saddle dominates at z: Omega+ if g > tol, Omega- if g < -tol."""
    return RegionTag(int(np.ravel(region_codes(complex(z), a, tol))[0]))


def _in_rectangle(z, a, slack=1e-12):
    h = 2.0 * math.sqrt(a)
    return ((z.real >= -slack) & (z.real <= 1.0 + slack)
            & (np.abs(z.imag) <= h + slack))


def limiting_cauchy(z, a):
    """Limit of p_n'/(n p_n) off the support.

    log(1 + xi_-) on Omega+, log(1 + xi_+) on Omega-, reflected by
    conjugation below the real axis.  Raises :class:`AttractorError` on the
    arc or on the real segment [a, gamma(1)].
    """
    a = _check_a(a)
    z0 = _cplx(z)
    if not np.all(_in_rectangle(z0, a)):
        raise DomainError("z must lie in the closed rectangle [0,1] + 2i sqrt(a) [-1,1]")
    lower = z0.imag < 0
    zu = np.where(lower, np.conj(z0), z0) + 0j
    code = np.atleast_1d(region_codes(zu, a))
    if np.any(code == 0):
        raise AttractorError("z lies on the zero attractor")
    xp, xm = saddle_xi(zu, a)
    w = np.where(np.reshape(code, np.shape(zu)) > 0, 1.0 + xm, 1.0 + xp)
    if np.any((w.imag == 0.0) & (w.real <= 0.0)):
        raise AttractorError("z lies on the real support [a, gamma(1)]")
    c = np.log(w)
    c = np.where(lower, np.conj(c), c)
    return _out(c, z)


def rho(z, a):
    """(f(xi_+) - f(xi_-)) / (2 pi i), principal branches (upper side on cuts)."""
    a = _check_a(a)
    z = _cplx(z)
    xp, xm = saddle_xi(z, a)
    r = (np.asarray(f_eval(xp, z, a, allow_cut=True))
         - np.asarray(f_eval(xm, z, a, allow_cut=True))) / (2j * math.pi)
    return _out(r, z)


def log_ratio(z, a):
    """log((1 + xi_+) / (1 + xi_-)), principal branch."""
    xp, xm = saddle_xi(z, a)
    return _out(np.log((1.0 + xp) / (1.0 + xm)), _cplx(z))


def mu1_density(z, a):
    """Arc density per unit t at points z = gamma(t) of the arc.

    (sqrt(a) / pi) |log R|^2 / log|R| with R = (1 + xi_+) / (1 + xi_-).
    At the corner R = 1 and the expression is 0/0 (returned as nan).
    """
    a = _check_a(a)
    L = np.asarray(log_ratio(z, a))
    with np.errstate(divide="ignore", invalid="ignore"):
        d = math.sqrt(a) / math.pi * np.abs(L) ** 2 / L.real
    return float(d) if np.ndim(d) == 0 else d
