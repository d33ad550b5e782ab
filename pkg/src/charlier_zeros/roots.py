"""Roots of p_n, argument-principle counting, and the empirical distribution.

All n roots are found simultaneously by Aberth-Ehrlich iteration driven by
the scaled (p, p') evaluation; the starting cloud is drawn from the limiting
distribution.  Counting by the argument principle is independent of the
iteration and serves as its oracle.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _backend
from .charlier_core import eval_pn_many
from .curve import TracedCurve, arc_rho, trace_curve, x_of_t
from .errors import (BoundaryHitError, DomainError, InconsistencyError,
                     InvariantViolation, NonConvergenceError, NonIntegralWindingError)
from .precision import working_precision

MAX_SWEEPS = 500
RESIDUAL_TOL = 1e-10
CONJ_TOL = 1e-9
TRACE_TOL = 1e-7
LOC_SLACK = 1e-8
MULT_TOL = 1e-8


@dataclass(frozen=True)
class RootSet:
    """Roots sorted by real then imaginary part.

    ``residuals`` are Newton-step sizes |p/p'| at each root (scale free);
    ``multiplicity[k]`` counts the roots within MULT_TOL of root k.
    """

    n: int
    a: float
    roots: np.ndarray
    residuals: np.ndarray
    iterations: int
    multiplicity: np.ndarray
    precision: int
    seed: int

    def conjugate_error(self) -> float:
        return conjugate_error(self.roots)

    def trace_error(self) -> float:
        return abs(complex(np.sum(self.roots)) - (self.n + 1) / 2.0)

    def localization_ok(self, slack: float = LOC_SLACK) -> bool:
        h = 2.0 * math.sqrt(self.a)
        z = self.roots
        return bool(np.all((z.real > 0.0) & (z.real <= 1.0 + slack)
                           & (np.abs(z.imag) < h + slack)))


@dataclass(frozen=True)
class EmpiricalCdf:
    """Upper-half roots projected onto the arc parameter.

    ``counts[k]`` is the number of roots with Im > 0 assigned to t <= grid[k];
    roots on the real axis assigned to the arc sit on both arcs and enter
    ``axis_counts`` with half weight in :meth:`values`.
    """

    grid: np.ndarray
    counts: np.ndarray
    axis_counts: np.ndarray
    n: int
    real_cluster: int
    assigned_t: np.ndarray = field(repr=False)
    distances: np.ndarray = field(repr=False)
    far: int = 0

    def values(self) -> np.ndarray:
        return (self.counts + 0.5 * self.axis_counts) / self.n


def conjugate_error(z: np.ndarray) -> float:
    """Largest distance in the optimal matching of z with conj(z)."""
    z = np.asarray(z, complex)
    cost = np.abs(z[:, None] - np.conj(z)[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max()) if len(z) else 0.0


def match_distance(u, v) -> float:
    """Largest distance in the optimal one-to-one matching of two root sets."""
    u = np.asarray(u, complex)
    v = np.asarray(v, complex)
    if len(u) != len(v):
        raise DomainError("root sets differ in size")
    cost = np.abs(u[:, None] - v[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max()) if len(u) else 0.0


def _symmetrize(z: np.ndarray, tol: float) -> np.ndarray:
    cost = np.abs(z[:, None] - np.conj(z)[None, :])
    _, perm = linear_sum_assignment(cost)
    if not np.array_equal(perm[perm], np.arange(len(z))):
        return z
    out = z.copy()
    for i, j in enumerate(perm):
        if cost[i, j] > tol:
            continue
        if i == j:
            out[i] = complex(z[i].real, 0.0)
        elif i < j:
            m = 0.5 * (z[i] + np.conj(z[j]))
            out[i], out[j] = m, np.conj(m)
    return out


def _initial_guesses(n: int, a: float, rng: np.random.Generator) -> np.ndarray:
    h = 2.0 * math.sqrt(a)
    curve = trace_curve(a, 257)
    mu2 = max(0.0, curve.gamma1 - a)
    arc_mass = float(curve.rho[-1])
    k = int(round(0.7 * n))
    u = rng.uniform(0.0, 1.0, k)
    on_real = u < mu2
    # arc points by inverting the arc CDF; random half plane
    t = np.interp(rng.uniform(0.0, arc_mass, k), curve.rho, curve.t)
    z_arc = np.interp(t, curve.t, curve.x) + 1j * np.interp(t, curve.t, curve.y)
    z_arc = np.where(rng.uniform(size=k) < 0.5, z_arc, np.conj(z_arc))
    z_real = rng.uniform(a, max(curve.gamma1, a), k) + 0j
    z0 = np.where(on_real, z_real, z_arc)
    z0 = z0 + 0.01 * (rng.standard_normal(k) + 1j * rng.standard_normal(k))
    z1 = rng.uniform(0.0, 1.0, n - k) + 1j * h * rng.uniform(-1.0, 1.0, n - k)
    return np.concatenate([z0, z1])


def _log_derivative(z, n, a, prec):
    b = eval_pn_many(z, n, a, prec=prec)
    ld = b.log_derivative()
    return ld, b.value == 0


def find_roots(n: int, a: float, seed: int = 0, *, prec: int | None = None,
               max_sweeps: int = MAX_SWEEPS, check: bool = True) -> RootSet:
    """All roots of p_n(.; a) by Aberth-Ehrlich iteration.

    Each sweep updates every unconverged root from the previous sweep's
    snapshot.  A root is frozen once its correction drops below four ulps.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    a = float(a)
    if not (math.isfinite(a) and a > 0.0):
        raise DomainError(f"a must be a positive finite real, got {a!r}")
    n = int(n)
    if prec is None:
        prec = working_precision(n, a)
    if n == 1:
        z = np.array([1.0 + 0j])
        sweeps = 0
    else:
        rng = np.random.default_rng(seed)
        z = _initial_guesses(n, a, rng)
        active = np.ones(n, dtype=bool)
        sweeps = 0
        while np.any(active):
            if sweeps >= max_sweeps:
                raise NonConvergenceError(
                    f"{int(active.sum())} of {n} roots unconverged after {max_sweeps} sweeps")
            sweeps += 1
            idx = np.flatnonzero(active)
            ld, exact = _log_derivative(z[idx], n, a, prec)
            sr, si = _backend.aberth_sums(z.real.copy(), z.imag.copy())
            s = (sr + 1j * si)[idx]
            with np.errstate(divide="ignore", invalid="ignore"):
                corr = 1.0 / (ld - s)
            corr = np.where(exact, 0.0, corr)
            if not np.all(np.isfinite(corr)):
                # coincident iterates or overflow: nudge and carry on
                bad = ~np.isfinite(corr)
                corr[bad] = 1e-3 * (rng.standard_normal(bad.sum()) + 1j * rng.standard_normal(bad.sum()))
            z[idx] = z[idx] - corr
            done = np.abs(corr) <= 4.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(z[idx]))
            active[idx[done]] = False
        z = _symmetrize(z, CONJ_TOL)
    z = np.sort_complex(z)
    b = eval_pn_many(z, n, a, prec=prec)
    res = np.abs(b.newton_step())
    res = np.where(b.value == 0, 0.0, res)
    dist = np.abs(z[:, None] - z[None, :])
    mult = np.sum(dist < MULT_TOL, axis=1)
    rs = RootSet(n, a, z, res, sweeps, mult, int(prec), int(seed))
    if check:
        _post_checks(rs)
    return rs


def _post_checks(rs: RootSet) -> None:
    if not rs.localization_ok():
        raise InvariantViolation("a root lies outside the localization rectangle")
    if rs.trace_error() > TRACE_TOL:
        raise InvariantViolation(f"sum of roots off by {rs.trace_error():.3e}")
    if rs.conjugate_error() > CONJ_TOL:
        raise InvariantViolation(f"roots not conjugation symmetric ({rs.conjugate_error():.3e})")
    if np.any(rs.multiplicity > 1):
        warnings.warn("clustered roots detected (possible multiple root)", RuntimeWarning)
    if rs.residuals.max() > RESIDUAL_TOL:
        raise NonConvergenceError(f"max residual {rs.residuals.max():.3e} exceeds {RESIDUAL_TOL}")


# -- argument principle -------------------------------------------------------

def _boundary(lo: complex, hi: complex, m: int) -> np.ndarray:
    """Counter-clockwise boundary points, m per side, closed loop not repeated."""
    s = np.arange(m) / m
    x0, y0, x1, y1 = lo.real, lo.imag, hi.real, hi.imag
    return np.concatenate([
        x0 + (x1 - x0) * s + 1j * y0,
        x1 + 1j * (y0 + (y1 - y0) * s),
        x1 - (x1 - x0) * s + 1j * y1,
        x0 + 1j * (y1 - (y1 - y0) * s),
    ])


def _winding(pts: np.ndarray, n: int, a: float, prec: int, hit_tol: float):
    b = eval_pn_many(pts, n, a, prec=prec)
    step = np.abs(b.newton_step())
    if np.any(b.value == 0) or np.nanmin(step) < hit_tol:
        raise BoundaryHitError("a zero lies (numerically) on the contour")
    ph = np.angle(b.value)
    d = np.diff(np.concatenate([ph, ph[:1]]))
    d = (d + np.pi) % (2.0 * np.pi) - np.pi
    return float(d.sum() / (2.0 * np.pi)), float(np.abs(d).max())


def _count_once(lo, hi, n, a, m, prec, max_doublings, hit_tol):
    prev = None
    for _ in range(max_doublings + 1):
        w, dmax = _winding(_boundary(lo, hi, m), n, a, prec, hit_tol)
        k = round(w)
        if abs(w - k) > 0.25:
            raise NonIntegralWindingError(f"winding {w:.6f} is not an integer")
        # phase steps below 1 rad and a stable count across a doubling
        if dmax < 1.0 and prev == k:
            return int(k)
        prev = k
        m *= 2
    raise NonConvergenceError("winding count did not stabilize")


def count_zeros(rect_lo: complex, rect_hi: complex, n: int, a: float,
                samples_per_side: int = 256, *, retries: int = 3,
                prec: int | None = None, max_doublings: int = 8,
                hit_tol: float = 1e-9) -> int:
    """Zeros of p_n strictly inside an axis-aligned rectangle.

    If a zero sits (numerically) on the boundary the rectangle is grown by a
    small deterministic amount and the count retried.
    """
    rect_lo, rect_hi = complex(rect_lo), complex(rect_hi)
    if not (rect_lo.real < rect_hi.real and rect_lo.imag < rect_hi.imag):
        raise DomainError("rect_lo must be below and left of rect_hi")
    if samples_per_side < 256:
        raise DomainError("samples_per_side must be at least 256")
    if prec is None:
        prec = working_precision(int(n), float(a))
    size = max(rect_hi.real - rect_lo.real, rect_hi.imag - rect_lo.imag)
    for attempt in range(retries + 1):
        try:
            return _count_once(rect_lo, rect_hi, n, a, samples_per_side, prec,
                               max_doublings, hit_tol)
        except BoundaryHitError:
            if attempt == retries:
                raise
            eps = size * 1e-6 * (attempt + 1) * complex(1.0, 0.7071)
            rect_lo, rect_hi = rect_lo - eps, rect_hi + eps
    raise AssertionError("unreachable")


def _circle_moment(c: complex, r: float, n: int, a: float, prec: int, m: int = 256):
    th = 2.0 * np.pi * np.arange(m) / m
    e = np.exp(1j * th)
    z = c + r * e
    ld = eval_pn_many(z, n, a, prec=prec).log_derivative()
    count = np.mean(ld * r * e)
    first = np.mean(z * ld * r * e)
    return count, first


_SPLITS = (0.4871, 0.5329, 0.4417, 0.5711, 0.4123)


def roots_by_argument_principle(n: int, a: float, *, cell_size: float = 1e-3,
                                samples_per_side: int = 256) -> np.ndarray:
    """Roots located by recursive argument-principle bisection.

    Cells are split (at slightly off-centre fractions so cut lines avoid
    roots) until each holds one zero and is smaller than ``cell_size``; the
    zero is then the first moment of p'/p over a circle around the cell.
    Meant as an oracle for small n.
    """
    prec = working_precision(int(n), float(a))
    h = 2.0 * math.sqrt(a)
    lo, hi = complex(-0.1, -1.05 * h), complex(1.1, 1.05 * h)
    total = count_zeros(lo, hi, n, a, samples_per_side, prec=prec)
    if total != n:
        raise InconsistencyError(f"counted {total} zeros, expected {n}")
    stack = [(lo, hi, total)]
    found = []
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        w, ht = hi.real - lo.real, hi.imag - lo.imag
        if k == 1 and max(w, ht) <= cell_size:
            c = 0.5 * (lo + hi)
            r = 0.75 * math.hypot(w, ht)
            cnt, first = _circle_moment(c, r, n, a, prec)
            if abs(cnt - 1.0) > 1e-6:
                raise InconsistencyError("circle around an isolated zero does not wind once")
            found.append(complex(first))
            continue
        if max(w, ht) < 1e-13:
            found.extend([complex(0.5 * (lo + hi))] * k)
            continue
        for f in _SPLITS:
            if w >= ht:
                cut = lo.real + f * w
                kids = [(lo, complex(cut, hi.imag)), (complex(cut, lo.imag), hi)]
            else:
                cut = lo.imag + f * ht
                kids = [(lo, complex(hi.real, cut)), (complex(lo.real, cut), hi)]
            try:
                counts = [count_zeros(l, u, n, a, samples_per_side, prec=prec, retries=0)
                          for l, u in kids]
            except BoundaryHitError:
                continue
            if sum(counts) != k:
                raise InconsistencyError("child cell counts do not add up")
            stack.extend((l, u, c) for (l, u), c in zip(kids, counts))
            break
        else:
            raise BoundaryHitError("every split line hits a zero")
    return np.sort_complex(np.array(found))


# -- empirical distribution ---------------------------------------------------

def real_cluster_threshold(n: int) -> float:
    return max(0.02, 5.0 / n)


def _nearest_on_curve(z: np.ndarray, curve: TracedCurve):
    d = np.abs(z[:, None] - curve.z[None, :])
    k = np.argmin(d, axis=1)
    return k, d[np.arange(len(z)), k]


def _interval_distance(z: np.ndarray, a: float, g1: float) -> np.ndarray:
    x = np.clip(z.real, a, g1)
    return np.abs(z - x)


def empirical_cdf_on_curve(rs: RootSet, curve: TracedCurve,
                           threshold: float | None = None) -> EmpiricalCdf:
    """Assign every root with Im >= 0 to the arc or to the real interval.

    A root goes to the real interval [a, gamma(1)] (only present when
    a < gamma(1)) if |Im| is below the threshold and it is closer to the
    interval than to the arc; otherwise to the nearest arc sample.
    """
    if rs.a != curve.a:
        raise DomainError("root set and curve belong to different a")
    thr = real_cluster_threshold(rs.n) if threshold is None else threshold
    z = rs.roots[rs.roots.imag >= 0.0]
    k, d_arc = _nearest_on_curve(z, curve)
    to_real = np.zeros(len(z), dtype=bool)
    if curve.a < curve.gamma1:
        d_int = _interval_distance(z, curve.a, curve.gamma1)
        to_real = (np.abs(z.imag) < thr) & (d_int < d_arc)
    t_assigned = np.where(to_real, np.nan, curve.t[k])
    dist = np.where(to_real, np.abs(z.imag), d_arc)
    arc = ~to_real
    upper = arc & (z.imag > 0)
    axis = arc & (z.imag == 0)
    grid = curve.t
    counts = np.searchsorted(np.sort(curve.t[k[upper]]), grid, side="right")
    axis_counts = np.searchsorted(np.sort(curve.t[k[axis]]), grid, side="right")
    far = int(np.sum(dist > max(0.1, 10.0 / rs.n)))
    if far:
        warnings.warn(f"{far} roots far from the limiting support", RuntimeWarning)
    # real-cluster roots in the open lower half plane mirror the upper ones
    lower = rs.roots[rs.roots.imag < 0]
    n_real = int(to_real.sum())
    if curve.a < curve.gamma1 and len(lower):
        _, dl = _nearest_on_curve(np.conj(lower), curve)
        dli = _interval_distance(lower, curve.a, curve.gamma1)
        n_real += int(np.sum((np.abs(lower.imag) < thr) & (dli < dl)))
    return EmpiricalCdf(grid, counts, axis_counts, rs.n, n_real, t_assigned, dist, far)


def cdf_sup_distance(cdf: EmpiricalCdf, curve: TracedCurve) -> float:
    """sup_t |F_n(t) - mu1(gamma([0, t]))| including left limits at jumps."""
    F = curve.rho
    v = cdf.values()
    left = np.concatenate([[0.0], v[:-1]])
    return float(max(np.max(np.abs(v - F)), np.max(np.abs(left - F))))


def real_cluster_fraction(cdf: EmpiricalCdf) -> float:
    return cdf.real_cluster / cdf.n


def limiting_cdf(t, curve: TracedCurve):
    """mu1(gamma([0, t])) at arbitrary t."""
    return arc_rho(np.asarray(t, float), x_of_t(t, curve.a), curve.a)
