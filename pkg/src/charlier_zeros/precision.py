"""Working-precision selection for the degree-n recurrence.

The forward recurrence is ill-conditioned in part of the root rectangle
(below the attractor arc), and the digits lost grow roughly linearly in n.
Binary64 is therefore only used when it is shown to be accurate: a grid of
probe points is evaluated in binary64 and in MPFR, and the MPFR precision is
raised until two successive precisions agree, plus a guard margin.

``CHARLIER_PRECISION`` selects the mode:

``standard`` (default)
    adaptive choice as described above.
``extended``
    always MPFR, at twice the adaptive precision.
"""
import functools
import math
import os

import numpy as np

from . import _backend
from .errors import DomainError, NonConvergenceError

F64 = 53
_MIN_MP = 64
_MAX_MP = 8192
_F64_TOL = 2.0**-44
# outputs are rounded to binary64 mantissas, so agreement is judged at a few
# ulps and a guard margin is added on top
_MP_TOL = 2.0**-50
_GUARD = 32
_GRID = 9


def precision_mode() -> str:
    mode = os.environ.get("CHARLIER_PRECISION", "standard").strip().lower() or "standard"
    if mode not in ("standard", "extended"):
        raise DomainError(f"CHARLIER_PRECISION must be 'standard' or 'extended', got {mode!r}")
    return mode


def probe_points(a: float) -> np.ndarray:
    """Probe grid over the upper half of the localization rectangle.

    Slightly offset from round numbers so probes do not sit on roots of
    small-degree polynomials.
    """
    xs = np.linspace(0.0, 1.0, _GRID) + 0.0123
    ys = np.linspace(0.0, 1.0, _GRID) * 2.0 * math.sqrt(a) + 0.0071
    X, Y = np.meshgrid(xs, ys)
    return (X + 1j * Y).ravel()


def _as_complex(out):
    vr, vi, ve, dr, di, de = out
    return vr + 1j * vi, ve, dr + 1j * di, de


def _rel_gap(u, v):
    """max relative difference of two scaled evaluations (value and derivative)."""
    um, ue, udm, ude = u
    vm, ve, vdm, vde = v
    worst = 0.0
    for m1, e1, m2, e2 in ((um, ue, vm, ve), (udm, ude, vdm, vde)):
        with np.errstate(all="ignore"):
            ratio = (m1 / m2) * np.exp2((e1 - e2).astype(float))
            gap = np.abs(ratio - 1.0)
        gap = np.where((m1 == 0) & (m2 == 0), 0.0, gap)
        gap = np.where(np.isfinite(gap), gap, np.inf)
        worst = max(worst, float(gap.max()))
    return worst


@functools.lru_cache(maxsize=256)
def _adaptive(n: int, a: float) -> int:
    z = probe_points(a)
    zr, zi = z.real.copy(), z.imag.copy()
    lo = _as_complex(_backend.eval_mp(zr, zi, n, a, _MIN_MP))
    prec = _MIN_MP
    while True:
        hi = _as_complex(_backend.eval_mp(zr, zi, n, a, 2 * prec))
        if _rel_gap(lo, hi) <= _MP_TOL:
            break
        prec *= 2
        if prec > _MAX_MP:
            raise NonConvergenceError(f"no stable precision up to {_MAX_MP} bits (n={n}, a={a})")
        lo = hi
    f64 = _as_complex(_backend.eval_f64(zr, zi, n, a))
    if _rel_gap(f64, hi) <= _F64_TOL:
        return F64
    return prec + _GUARD


def working_precision(n: int, a: float, mode: str | None = None) -> int:
    """Bits of precision for evaluating p_n at parameter ``a``.

    Returns 53 when the binary64 kernel is adequate, otherwise an MPFR
    precision in bits.
    """
    mode = precision_mode() if mode is None else mode
    p = _adaptive(int(n), float(a))
    if mode == "extended":
        return 2 * max(p, _MIN_MP)
    if mode != "standard":
        raise DomainError(f"unknown precision mode {mode!r}")
    return p
