"""The attractor arc, its real endpoint gamma(1), and related constants.

In the upper rectangle the arc is a graph x = x(y): for each height the
function x -> g(x + iy) is positive at x = 0 and negative at x = 1, so a
bisection per slice is globally convergent.  The arc is parametrized by
t = 1 - y / (2 sqrt(a)), running from the corner 1 + 2i sqrt(a) (t = 0) to
gamma(1) on the real axis (t = 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from . import saddle
from .errors import BracketError, DomainError


@dataclass(frozen=True)
class CurveSample:
    y: float
    x: float
    rho_real: float
    density: float
    t: float


@dataclass(frozen=True)
class TracedCurve:
    """Samples of the arc in ascending t, stored column-wise.

    ``rho`` is the arc mass from the corner, i.e. the continuous branch of
    Re rho along the arc: 0 at t = 0, increasing to the full arc mass at t = 1.
    """

    a: float
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    rho: np.ndarray
    density: np.ndarray
    gamma1: float

    def __len__(self) -> int:
        return len(self.t)

    def __getitem__(self, k: int) -> CurveSample:
        return CurveSample(float(self.y[k]), float(self.x[k]), float(self.rho[k]),
                           float(self.density[k]), float(self.t[k]))

    @property
    def samples(self) -> list[CurveSample]:
        return [self[k] for k in range(len(self))]

    @property
    def z(self) -> np.ndarray:
        return self.x + 1j * self.y

    def point_at(self, t):
        """gamma(t) at arbitrary t in [0, 1] (solved, not interpolated)."""
        return x_of_t(t, self.a) + 2j * math.sqrt(self.a) * (1.0 - np.asarray(t, float))


def _check_a(a):
    a = float(a)
    if not (math.isfinite(a) and a > 0.0):
        raise DomainError(f"a must be a positive finite real, got {a!r}")
    return a


def _bisect_slices(y: np.ndarray, a: float) -> np.ndarray:
    """Zero of x -> g(x + iy) on [0, 1] for every y (vectorized bisection)."""
    lo = np.zeros_like(y)
    hi = np.ones_like(y)
    glo = saddle.g_value(lo + 1j * y, a)
    ghi = saddle.g_value(hi + 1j * y, a)
    bad = ~((glo > 0) & (ghi < 0))
    if np.any(bad):
        k = int(np.argmax(bad))
        raise BracketError(f"sign conditions fail at y={y[k]!r} (a={a}): "
                           f"g(0)={glo[k]!r}, g(1)={ghi[k]!r}")
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        gm = saddle.g_value(mid + 1j * y, a)
        pos = gm > 0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
        glo = np.where(pos, gm, glo)
        ghi = np.where(pos, ghi, gm)
        # exact zero: collapse the bracket
        zero = gm == 0
        lo = np.where(zero, mid, lo)
        hi = np.where(zero, mid, hi)
        if np.all(hi - lo <= 2.0 * np.spacing(hi)):
            break
    return np.where(np.abs(glo) <= np.abs(ghi), lo, hi)


# below this t, |g(1 + iy)| ~ t^(3/2) is under rounding level and the bracket
# cannot be certified; x is pinned to the corner value there
T_PIN = 1e-9


def x_of_t(t, a):
    """Real part of gamma(t); x = 1 is pinned for t < T_PIN (coincident saddles)."""
    a = _check_a(a)
    t = np.asarray(t, dtype=float)
    tt = np.atleast_1d(t)
    if np.any((tt < 0) | (tt > 1)):
        raise DomainError("t must lie in [0, 1]")
    x = np.ones_like(tt)
    inner = tt >= T_PIN
    if np.any(inner):
        x[inner] = _bisect_slices(2.0 * math.sqrt(a) * (1.0 - tt[inner]), a)
    return float(x[0]) if t.ndim == 0 else x


def arc_rho(t, x, a):
    """Continuous arc mass from the corner to gamma(t).

    On the open arc this is Re rho(gamma(t)) with principal branches.  At the
    real endpoint the principal value sits on the other side of the cut of
    log xi_- (or log(1 + xi_-)), so the one-sided limit -Re rho is used.
    """
    t = np.asarray(t, float)
    z = np.asarray(x, float) + 2j * math.sqrt(a) * (1.0 - t)
    r = np.asarray(saddle.rho(z, a)).real
    r = np.where(t == 0.0, 0.0, r)
    return np.where(t == 1.0, -r, r)


def trace_curve(a: float, m: int = 513) -> TracedCurve:
    """Sample the arc on a uniform grid of m heights in [0, 2 sqrt(a)]."""
    a = _check_a(a)
    if int(m) != m or m < 2:
        raise DomainError("m must be an integer >= 2")
    t = np.linspace(0.0, 1.0, int(m))
    x = x_of_t(t, a)
    y = 2.0 * math.sqrt(a) * (1.0 - t)
    y[-1] = 0.0
    x[0] = 1.0
    rho = arc_rho(t, x, a)
    dens = np.empty_like(t)
    dens[0] = 0.0
    dens[1:] = saddle.mu1_density(x[1:] + 1j * y[1:], a)
    return TracedCurve(a, t, x, y, rho, dens, float(x[-1]))


def gamma1(a: float) -> float:
    """Real endpoint of the arc: the zero of g on (0, 1)."""
    a = _check_a(a)
    lo, hi = 1e-6, 1.0 - 1e-6
    h = lambda x: saddle.g_value(x, a)
    if not (h(lo) > 0 > h(hi)):
        raise BracketError(f"g does not change sign on [{lo}, {hi}] for a={a}")
    return optimize.brentq(h, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=200)


def _h_threshold(a):
    return a * math.exp(1.0 + a) - 1.0


def threshold_a() -> float:
    """The a with a e^{1+a} = 1 (where gamma(1) = a), i.e. W(1/e)."""
    a = optimize.brentq(_h_threshold, 0.2, 0.3, xtol=1e-17, rtol=4 * np.finfo(float).eps)
    # one Newton step to land on the nearest double
    a -= _h_threshold(a) / ((1.0 + a) * math.exp(1.0 + a))
    return a


def threshold_fixed_point(tol: float = 1e-16, maxiter: int = 200) -> float:
    """W(1/e) by the contraction a <- exp(-1 - a)."""
    a = 0.25
    for _ in range(maxiter):
        b = math.exp(-1.0 - a)
        if abs(b - a) <= tol:
            return b
        a = b
    return a


def threshold_lambertw() -> float:
    return float(special.lambertw(math.exp(-1.0)).real)


def solve_y0() -> float:
    """Positive root of y = coth(y)."""
    return optimize.brentq(lambda y: y - 1.0 / math.tanh(y), 1.0, 1.5,
                           xtol=1e-16, rtol=4 * np.finfo(float).eps)


def gamma1_min(search_lo: float = 0.05, search_hi: float = 1.0) -> tuple[float, float]:
    """Minimizer and minimum of a -> gamma1(a) on [search_lo, search_hi]."""
    if not 0.0 < search_lo < search_hi:
        raise DomainError("need 0 < search_lo < search_hi")
    res = optimize.minimize_scalar(gamma1, bounds=(search_lo, search_hi),
                                   method="bounded", options={"xatol": 1e-7})
    return float(res.x), float(res.fun)


def ode_residual(curve: TracedCurve) -> float:
    """Max |x'(t) log|R| + 2 sqrt(a) arg R| over interior samples.

    R = (1 + xi_+) / (1 + xi_-) at gamma(t); x' by central differences, so the
    result is O(h^2) for a uniform grid.
    """
    if len(curve) < 9:
        raise DomainError("need at least 9 samples")
    t, x = curve.t, curve.x
    dx = (x[2:] - x[:-2]) / (t[2:] - t[:-2])
    L = np.asarray(saddle.log_ratio(curve.z[1:-1], curve.a))
    res = dx * L.real + 2.0 * math.sqrt(curve.a) * L.imag
    return float(np.max(np.abs(res)))
