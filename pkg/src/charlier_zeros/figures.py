"""Data and quick-look SVGs for the five standard figures.

1. the arc for a in {0.01, 0.1, 1, 10}
2. roots for a = 1 with the support overlaid
3. roots for a = 1/12, where the real segment carries mass
4. sign of g over the rectangle (a = 1) with the arc as the common boundary
5. arc density against t for a in {0.1, 0.25, 0.5, 10}
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import saddle
from .curve import trace_curve
from .formats import Svg, write_csv
from .roots import find_roots

FIG1_A = (0.01, 0.1, 1.0, 10.0)
FIG5_A = (0.1, 0.25, 0.5, 10.0)
COLORS = ("black", "blue", "green", "purple")


def _tag(a: float) -> str:
    return f"{a:g}"


def _curve_csv(path, c):
    return write_csv(path, ["t", "x", "y", "rho", "density"],
                     zip(c.t, c.x, c.y, c.rho, c.density))


def figure1(out: Path, samples: int = 513) -> list[Path]:
    files = []
    # curves scaled by their own height so all four fit one panel
    svg = Svg((0.0, 1.05), (-1.05, 1.05))
    for a, col in zip(FIG1_A, COLORS):
        c = trace_curve(a, samples)
        files.append(_curve_csv(out / f"fig1_curve_a{_tag(a)}.csv", c))
        h = 2.0 * math.sqrt(a)
        svg.polyline(c.x, c.y / h, col)
        svg.polyline(c.x, -c.y / h, col)
    files.append(svg.save(out / "fig1.svg"))
    return files


def _roots_figure(out: Path, name: str, n: int, a: float, seed: int, samples: int):
    rs = find_roots(n, a, seed)
    c = trace_curve(a, samples)
    files = [write_csv(out / f"{name}_roots.csv", ["re", "im", "residual"],
                       zip(rs.roots.real, rs.roots.imag, rs.residuals)),
             _curve_csv(out / f"{name}_support.csv", c)]
    h = 2.0 * math.sqrt(a)
    svg = Svg((-0.05, 1.05), (-1.05 * h, 1.05 * h))
    svg.polyline(c.x, c.y, "red")
    svg.polyline(c.x, -c.y, "red")
    if a < c.gamma1:
        svg.polyline([a, c.gamma1], [0.0, 0.0], "red", 2.0)
    svg.scatter(rs.roots.real, rs.roots.imag)
    files.append(svg.save(out / f"{name}.svg"))
    return files


def figure2(out: Path, n: int = 100, seed: int = 0, samples: int = 513):
    return _roots_figure(out, "fig2", n, 1.0, seed, samples)


def figure3(out: Path, n: int = 100, seed: int = 0, samples: int = 513):
    return _roots_figure(out, "fig3", n, 1.0 / 12.0, seed, samples)


def figure4(out: Path, samples: int = 513, grid: int = 101, a: float = 1.0):
    h = 2.0 * math.sqrt(a)
    xs = np.linspace(0.0, 1.0, grid)
    ys = np.linspace(0.0, h, grid)
    X, Y = np.meshgrid(xs, ys)
    G = saddle.g_value(X + 1j * Y, a)
    files = [write_csv(out / "fig4_grid.csv", ["x", "y", "g"],
                       zip(X.ravel(), Y.ravel(), G.ravel()))]
    c = trace_curve(a, samples)
    files.append(_curve_csv(out / "fig4_boundary.csv", c))
    svg = Svg((0.0, 1.0), (0.0, h))
    dx, dy = xs[1] - xs[0], ys[1] - ys[0]
    for x, y, g in zip(X.ravel(), Y.ravel(), G.ravel()):
        svg.rect(x - dx / 2, y - dy / 2, dx, dy, "#cfe0ff" if g > 0 else "#ffe3c4")
    svg.polyline(c.x, c.y, "red", 2.0)
    files.append(svg.save(out / "fig4.svg"))
    return files


def figure5(out: Path, samples: int = 513):
    files = []
    curves = [trace_curve(a, samples) for a in FIG5_A]
    top = max(float(np.nanmax(np.where(np.isfinite(c.density), c.density, np.nan)))
              for c in curves)
    svg = Svg((0.0, 1.0), (0.0, 1.05 * top))
    for c, col in zip(curves, COLORS):
        files.append(write_csv(out / f"fig5_density_a{_tag(c.a)}.csv", ["t", "density"],
                               zip(c.t, c.density)))
        svg.polyline(c.t, c.density, col)
    files.append(svg.save(out / "fig5.svg"))
    return files


def emit(which: int, out_dir, *, n: int = 100, seed: int = 0, samples: int = 513) -> list[Path]:
    out = Path(out_dir)
    if which == 1:
        return figure1(out, samples)
    if which == 2:
        return figure2(out, n, seed, samples)
    if which == 3:
        return figure3(out, n, seed, samples)
    if which == 4:
        return figure4(out, samples)
    if which == 5:
        return figure5(out, samples)
    raise ValueError(f"unknown figure {which}")
