"""End-to-end comparison of a finite-n root cloud with the limiting measure."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import saddle
from .charlier_core import empirical_cauchy
from .curve import ode_residual, threshold_a, trace_curve, x_of_t
from .errors import EvaluationAtRootError, NonConvergenceError
from .formats import fmt_float
from .measure import MASS_TOL, total_mass
from .roots import (CONJ_TOL, RESIDUAL_TOL, TRACE_TOL, cdf_sup_distance, count_zeros,
                    empirical_cdf_on_curve, find_roots, real_cluster_fraction)

PROBE_FRACTIONS = (0.1, 0.3, 0.5, 0.7, 0.9)

# exit-code categories
OK, CONVERGENCE, INVARIANT = 0, 3, 4


def cdf_tolerance(n: int) -> float:
    return max(0.06, 6.0 / n)


def cauchy_tolerance(n: int, d: float = math.inf) -> float:
    """Allowed |C_n - C| at a probe at distance d from the roots and the support.

    A single root at distance d contributes up to 1/(n d) to C_n, so probes
    close to the cloud get proportionally more room.
    """
    return max(0.05, 10.0 / n, 2.0 / (n * d))


def _support_points(curve) -> np.ndarray:
    pts = [curve.z, np.conj(curve.z)]
    if curve.a < curve.gamma1:
        pts.append(np.linspace(curve.a, curve.gamma1, 257) + 0j)
    return np.concatenate(pts)


def mu2_tolerance(n: int) -> float:
    return max(0.05, 5.0 / n)


def cauchy_probes(a: float) -> list[complex]:
    """Five probes left of the arc (Omega+) and five right of it (Omega-)."""
    h = 2.0 * math.sqrt(a)
    fr = np.array(PROBE_FRACTIONS)
    x = x_of_t(1.0 - fr, a)
    plus = 0.5 * x + 1j * h * fr
    minus = 0.5 * (x + 1.0) + 1j * h * fr
    return [complex(z) for z in np.concatenate([plus, minus])]


def cauchy_errors(n: int, a: float, probes=None) -> list[tuple[complex, float]]:
    out = []
    for z in cauchy_probes(a) if probes is None else probes:
        try:
            e = abs(empirical_cauchy(z, n, a) - saddle.limiting_cauchy(z, a))
        except EvaluationAtRootError:
            e = math.nan
        out.append((z, float(e)))
    return out


@dataclass
class VerificationReport:
    a: float
    n: int
    seed: int
    localization_ok: bool = False
    symmetry_ok: bool = False
    conjugate_error: float = math.nan
    trace_error: float = math.nan
    max_residual: float = math.nan
    zero_count: int = -1
    mass_total: float = math.nan
    mass_total_quadrature: float = math.nan
    cdf_sup_distance: float = math.nan
    real_cluster_fraction: float = math.nan
    mu2_mass: float = math.nan
    ode_residual: float = math.nan
    cauchy_errors: list = field(default_factory=list)
    threshold: float = math.nan
    gamma1: float = math.nan
    precision: int = 0
    iterations: int = 0
    warnings: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    exit_code: int = OK

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, what: str, category: int) -> None:
        self.failures.append(what)
        if self.exit_code == OK:
            self.exit_code = category

    def to_text(self) -> str:
        def v(x):
            if isinstance(x, bool):
                return "true" if x else "false"
            if isinstance(x, float):
                return fmt_float(x)
            return str(x)

        lines = []
        for key in ("a", "n", "seed", "passed", "exit_code", "localization_ok", "symmetry_ok",
                    "conjugate_error", "trace_error", "max_residual", "zero_count",
                    "mass_total", "mass_total_quadrature", "cdf_sup_distance",
                    "real_cluster_fraction", "mu2_mass", "ode_residual", "threshold",
                    "gamma1", "precision", "iterations"):
            lines.append(f"{key}={v(getattr(self, key))}")
        probes = ";".join(f"{fmt_float(z.real)},{fmt_float(z.imag)},{fmt_float(e)}"
                          for z, e in self.cauchy_errors)
        lines.append(f"cauchy_errors={probes}")
        lines.append("warnings=" + "|".join(self.warnings))
        lines.append("failures=" + "|".join(self.failures))
        return "\n".join(lines) + "\n"


def run_verification(n: int, a: float, seed: int = 0) -> VerificationReport:
    """Run every check for one (n, a) and collect the outcome.

    Convergence failures are reported with category 3, failed checks with 4.
    """
    r = VerificationReport(a=float(a), n=int(n), seed=int(seed))
    r.threshold = threshold_a()
    curve = trace_curve(a, 513)
    r.gamma1 = curve.gamma1
    r.ode_residual = ode_residual(curve)

    ms = total_mass(a, curve)
    r.mass_total, r.mass_total_quadrature, r.mu2_mass = ms.total, ms.quad_total, ms.mu2_mass
    if abs(ms.total - 1.0) > MASS_TOL:
        r.fail("mass_total", INVARIANT)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            rs = find_roots(n, a, seed, check=False)
        except NonConvergenceError as exc:
            r.warnings.append(str(exc))
            r.fail("root_convergence", CONVERGENCE)
            return r
        r.precision, r.iterations = rs.precision, rs.iterations
        r.localization_ok = rs.localization_ok()
        r.conjugate_error = rs.conjugate_error()
        r.symmetry_ok = r.conjugate_error <= CONJ_TOL
        r.trace_error = rs.trace_error()
        r.max_residual = float(rs.residuals.max())
        if r.max_residual > RESIDUAL_TOL:
            r.fail("max_residual", CONVERGENCE)
        if not r.localization_ok:
            r.fail("localization", INVARIANT)
        if not r.symmetry_ok:
            r.fail("symmetry", INVARIANT)
        if r.trace_error > TRACE_TOL:
            r.fail("trace", INVARIANT)

        h = 2.0 * math.sqrt(a)
        r.zero_count = count_zeros(complex(-0.1, -1.05 * h), complex(1.1, 1.05 * h), n, a)
        if r.zero_count != n:
            r.fail("zero_count", INVARIANT)

        cdf = empirical_cdf_on_curve(rs, curve)
        r.cdf_sup_distance = cdf_sup_distance(cdf, curve)
        if r.cdf_sup_distance > cdf_tolerance(n):
            r.fail("cdf_sup_distance", INVARIANT)
        r.real_cluster_fraction = real_cluster_fraction(cdf)
        if abs(r.real_cluster_fraction - ms.mu2_mass) > mu2_tolerance(n):
            r.fail("real_cluster_fraction", INVARIANT)

        r.cauchy_errors = cauchy_errors(n, a)
        near = np.concatenate([rs.roots, _support_points(curve)])
        for z, e in r.cauchy_errors:
            d = float(np.min(np.abs(near - z)))
            if not math.isnan(e) and e > cauchy_tolerance(n, d):
                r.fail("cauchy_errors", INVARIANT)
                break
    r.warnings.extend(str(w.message) for w in caught)
    return r
