"""Acceptance suite: one PASS/FAIL line per criterion, with its runtime.

Run under pytest (lines are repeated in the terminal summary) or directly:

    python tests/test_acceptance.py
"""
import math
import os
import sys
import time

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from charlier_zeros import (cdf_sup_distance, contour_pn_oracle, count_zeros,  # noqa: E402
                            empirical_cauchy, empirical_cdf_on_curve, eval_pn, find_roots,
                            gamma1, gamma1_min, limiting_cauchy, mu1_arc_mass, ode_residual,
                            real_cluster_fraction, rho, solve_y0, threshold_a, total_mass,
                            trace_curve)
from charlier_zeros.curve import threshold_fixed_point  # noqa: E402
from charlier_zeros.precision import _adaptive  # noqa: E402
from charlier_zeros.verify import cauchy_probes  # noqa: E402

RESULTS = []
_CRITERIA = {}


def criterion(num, title, budget):
    def deco(fn):
        _CRITERIA[num] = (title, budget, fn)
        return fn
    return deco


def evaluate(num):
    title, budget, fn = _CRITERIA[num]
    # start each criterion cold so runtimes do not depend on test order
    _adaptive.cache_clear()
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    in_budget = dt < budget
    passed = bool(ok and in_budget)
    line = (f"{'PASS' if passed else 'FAIL'} [{num:2d}] {title}: {detail}; "
            f"runtime {dt * 1e3:.3f} ms (budget {budget * 1e3:g} ms)")
    RESULTS.append(line)
    print(line)
    return passed, line


@criterion(1, "threshold a*", 1e-3)
def c01():
    a = threshold_a()
    h = abs(a * math.exp(1 + a) - 1)
    fp = abs(threshold_fixed_point() - a)
    ok = h <= 1e-14 and abs(a - 0.2785) <= 5e-5 and fp <= 1e-12
    return ok, f"a*={a:.15f} |a e^(1+a)-1|={h:.1e} |W(1/e) fixed point - a*|={fp:.1e}"


@criterion(2, "y0 = coth(y0)", 1e-3)
def c02():
    y0 = solve_y0()
    return abs(y0 - 1.1997) <= 1e-4, f"y0={y0:.10f} |y0-1.1997|={abs(y0 - 1.1997):.1e}"


@criterion(3, "gamma(1) minimum over [0.05, 1]", 10.0)
def c03():
    a0, v = gamma1_min(0.05, 1.0)
    ok = abs(a0 - 0.2342) <= 5e-3 and abs(v - 0.2693) <= 5e-3
    return ok, f"a0={a0:.6f} min={v:.6f} (targets 0.2342, 0.2693 +- 5e-3)"


@criterion(4, "gamma(1) asymptotics", 1.0)
def c04():
    e_big = abs(gamma1(1e3) - (1 / 3 - 4 / 405000))
    y0 = solve_y0()
    e_small = abs(gamma1(1e-4) - (1 - 2e-2 / math.sqrt(y0**2 - 1)))
    ok = e_big <= 1e-5 and e_small <= 1e-3
    return ok, f"|err(a=1e3)|={e_big:.2e} (tol 1e-5) |err(a=1e-4)|={e_small:.2e} (tol 1e-3)"


@criterion(5, "total mass = 1", 5.0)
def c05():
    worst_c = worst_q = 0.0
    for a in (0.05, 1 / 12, threshold_a(), 0.5, 1.0, 10.0):
        s = total_mass(a, trace_curve(a, 513))
        worst_c = max(worst_c, abs(s.total - 1))
        worst_q = max(worst_q, abs(s.quad_total - 1))
    ok = worst_c <= 1e-6 and worst_q <= 1e-5
    return ok, f"max |closed form - 1|={worst_c:.1e} max |quadrature - 1|={worst_q:.1e}"


@criterion(6, "rho checkpoints", 1.0)
def c06():
    r0 = max(abs(rho(1 + 2j * math.sqrt(a), a)) for a in (1 / 12, 1.0))
    r1 = rho(gamma1(1.0), 1.0).real
    a = 1 / 12
    c = trace_curve(a, 65)
    m = mu1_arc_mass(0.0, 1.0, c)
    em = abs(m - (a - c.gamma1 + 1) / 2)
    ok = r0 <= 1e-10 and abs(r1 + 0.5) <= 1e-8 and em <= 1e-8
    return ok, (f"|rho(gamma(0))|={r0:.1e} rho(gamma(1)).re+1/2={r1 + 0.5:.1e} (a=1) "
                f"|arc mass-(a-gamma1+1)/2|={em:.1e} (a=1/12)")


@criterion(7, "root invariants n=100 a=1", 30.0)
def c07():
    rs = find_roots(100, 1.0, 0)
    loc = rs.localization_ok()
    conj = rs.conjugate_error()
    tr = rs.trace_error()
    cnt = count_zeros(complex(-0.1, -2.1), complex(1.1, 2.1), 100, 1.0)
    res = float(rs.residuals.max())
    ok = loc and conj <= 1e-9 and tr <= 1e-7 and cnt == 100 and res <= 1e-10
    return ok, (f"localized={loc} conj={conj:.1e} |sum-50.5|={tr:.1e} count={cnt} "
                f"max residual={res:.1e}")


@criterion(8, "empirical arc CDF vs rho", 120.0)
def c08():
    c = trace_curve(1.0, 513)
    d = [cdf_sup_distance(empirical_cdf_on_curve(find_roots(n, 1.0, 0), c), c) for n in (100, 200)]
    return d[0] <= 0.06 and d[1] < d[0], f"sup distance n=100: {d[0]:.4f} n=200: {d[1]:.4f}"


@criterion(9, "real cluster a=1/12 n=100", 30.0)
def c09():
    a = 1 / 12
    c = trace_curve(a, 513)
    f = real_cluster_fraction(empirical_cdf_on_curve(find_roots(100, a, 0), c))
    target = c.gamma1 - a
    return abs(f - target) <= 0.05, f"fraction={f:.4f} gamma(1)-a={target:.4f}"


@criterion(10, "Cauchy transform convergence", 60.0)
def c10():
    probes = cauchy_probes(1.0)
    lim = [limiting_cauchy(z, 1.0) for z in probes]
    E = np.array([[abs(empirical_cauchy(z, n, 1.0) - L) for z, L in zip(probes, lim)]
                  for n in (100, 200, 400)])
    mono = bool(np.all(E[1] < E[0]) and np.all(E[2] < E[1]))
    worst = E.max(axis=1)
    ok = mono and worst[2] <= 0.05
    return ok, (f"max error n=100/200/400: {worst[0]:.4f}/{worst[1]:.4f}/{worst[2]:.4f} "
                f"monotone at every probe={mono}")


@criterion(11, "contour oracle and n=2 roots", 5.0)
def c11():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 11))
        a = float(rng.choice([1 / 12, 0.5, 1.0, 3.0]))
        h = 2 * math.sqrt(a)
        z = complex(rng.uniform(0, 1), rng.uniform(-h, h))
        ref = n**n * eval_pn(z, n, a).value.to_complex()
        worst = max(worst, abs(contour_pn_oracle(z, n, a) - ref) / abs(ref))
    exact = np.array([0.75 - 1j * math.sqrt(7) / 4, 0.75 + 1j * math.sqrt(7) / 4])
    e2 = float(np.max(np.abs(find_roots(2, 1.0).roots - exact)))
    return worst <= 1e-8 and e2 <= 1e-12, f"max rel gap={worst:.1e} n=2 root error={e2:.1e}"


@criterion(12, "curve ODE residual", 10.0)
def c12():
    parts, ok = [], True
    for a in (0.1, 1.0, 10.0):
        r1 = ode_residual(trace_curve(a, 513))
        r2 = ode_residual(trace_curve(a, 1025))
        ok &= r1 <= 1e-3 and 3.0 <= r1 / r2 <= 5.0
        parts.append(f"a={a:g}: {r1:.1e} ratio {r1 / r2:.2f}")
    return ok, "; ".join(parts)


@pytest.mark.parametrize("num", sorted(_CRITERIA))
def test_acceptance(num):
    passed, line = evaluate(num)
    assert passed, line


if __name__ == "__main__":
    outcomes = [evaluate(k)[0] for k in sorted(_CRITERIA)]
    print(f"{sum(outcomes)}/{len(outcomes)} criteria passed")
    sys.exit(0 if all(outcomes) else 1)
