"""The limiting zero distribution mu = mu1 + mu2.

mu1 lives on the arc and its conjugate; the mass of gamma([alpha, beta]) is
a difference of rho values, and its density in t is an explicit function of
the saddle ratio.  mu2 is Lebesgue measure on [a, gamma(1)] when a < gamma(1)
and vanishes otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import saddle
from .curve import CurveSample, T_PIN, TracedCurve, arc_rho, x_of_t
from .errors import DegenerateSaddleError, DomainError, InconsistencyError

MASS_TOL = 1e-6
ROUTE_TOL = 1e-5


@dataclass(frozen=True)
class MeasureSummary:
    a: float
    gamma1: float
    mu1_mass: float
    mu2_mass: float
    total: float
    quad_mu1_mass: float
    quad_total: float

    @property
    def route_gap(self) -> float:
        return abs(self.total - self.quad_total)


def density_mu1(sample: CurveSample, a: float) -> float:
    """d mu1 / dt at one traced sample."""
    if sample.t == 0.0 or (sample.x == 1.0 and sample.y >= 2.0 * math.sqrt(a)):
        raise DegenerateSaddleError("density is 0/0 at the corner, where the saddles coincide")
    d = saddle.mu1_density(complex(sample.x, sample.y), a)
    return max(float(d), 0.0)


def arc_density(t, a):
    """d mu1 / dt at arbitrary parameters t (vectorized; the corner maps to 0)."""
    t = np.asarray(t, dtype=float)
    x = np.atleast_1d(x_of_t(t, a))
    tt = np.atleast_1d(t)
    d = np.asarray(saddle.mu1_density(x + 2j * math.sqrt(a) * (1.0 - tt), a), dtype=float)
    # near the corner the 0/0 form is unresolvable; the mass there is < T_PIN^1.5
    d = np.where((tt < T_PIN) | (~np.isfinite(d) & (tt < 0.5)), 0.0, d)
    return d.reshape(t.shape)


def mu1_arc_mass(t_alpha: float, t_beta: float, curve: TracedCurve) -> float:
    """mu1(gamma([t_alpha, t_beta])) from the rho difference."""
    if not 0.0 <= t_alpha <= t_beta <= 1.0:
        raise DomainError("need 0 <= t_alpha <= t_beta <= 1")
    if t_alpha == t_beta:
        return 0.0
    t = np.array([t_alpha, t_beta])
    r = arc_rho(t, x_of_t(t, curve.a), curve.a)
    return float(r[1] - r[0])


def mu2_density(x, a: float, gamma1: float):
    """Indicator of [a, gamma1] when a < gamma1, else 0."""
    x = np.asarray(x, dtype=float)
    d = np.where((a < gamma1) & (x >= a) & (x <= gamma1), 1.0, 0.0)
    return float(d) if d.ndim == 0 else d


def trapezoid_arc_mass(curve: TracedCurve, t1: float = 0.0, t2: float = 1.0) -> float:
    """Trapezoid rule for the density over [t1, t2] using the traced samples.

    Samples strictly inside the range are used as nodes; the end points are
    evaluated exactly.
    """
    if not 0.0 <= t1 <= t2 <= 1.0:
        raise DomainError("need 0 <= t1 <= t2 <= 1")
    inner = (curve.t > t1) & (curve.t < t2)
    ends = arc_density(np.array([t1, t2]), curve.a)
    t = np.concatenate([[t1], curve.t[inner], [t2]])
    d = np.concatenate([[ends[0]], curve.density[inner], [ends[1]]])
    return float(np.trapezoid(d, t))


def quadrature_arc_mass(a: float, atol: float = 1e-12, rtol: float = 1e-10) -> float:
    """Full-arc mass by adaptive tanh-sinh quadrature of the density.

    Tanh-sinh copes with the sqrt(t) behaviour at the corner and the
    logarithmic blow-up at t = 1 that appears at the threshold a = gamma(1).
    """
    res = integrate.tanhsinh(lambda t: arc_density(t, a), 0.0, 1.0,
                             atol=atol, rtol=rtol, maxlevel=12)
    return float(res.integral)


def total_mass(a: float, curve: TracedCurve) -> MeasureSummary:
    """Total mass of mu by the closed-form (rho) and quadrature routes."""
    if curve.a != float(a):
        raise DomainError("curve was traced for a different a")
    g1 = curve.gamma1
    mu2 = max(0.0, g1 - a)
    mu1 = float(curve.rho[-1])
    q1 = quadrature_arc_mass(a)
    s = MeasureSummary(a, g1, mu1, mu2, 2.0 * mu1 + mu2, q1, 2.0 * q1 + mu2)
    if s.route_gap > ROUTE_TOL:
        raise InconsistencyError(f"mass routes disagree by {s.route_gap:.3e} (a={a})")
    return s
