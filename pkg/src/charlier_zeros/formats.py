"""CSV and SVG writers shared by the command line and the figure emitters."""
from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Iterable, Sequence


def fmt_float(x: float) -> str:
    """17 significant digits (round-trip exact); integral values keep a '.0'."""
    s = f"{float(x):.17g}"
    if s.lstrip("-").isdigit():
        s += ".0"
    return s


def _cell(v) -> str:
    if isinstance(v, (float, int)) and not isinstance(v, bool):
        return fmt_float(v) if isinstance(v, float) else str(v)
    try:
        return fmt_float(float(v))
    except (TypeError, ValueError):
        return str(v)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(header, rows))
    return path


def read_csv(path) -> tuple[list[str], list[list[float]]]:
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        return header, [[float(v) for v in row] for row in r]


class Svg:
    """Minimal SVG 1.1 canvas with a fixed data-to-pixel map."""

    def __init__(self, xlim, ylim, width: int = 480, height: int = 480, pad: int = 20):
        self.xlim, self.ylim = xlim, ylim
        self.w, self.h, self.pad = width, height, pad
        self.items: list[str] = []

    def _px(self, x, y):
        (x0, x1), (y0, y1) = self.xlim, self.ylim
        u = self.pad + (x - x0) / (x1 - x0) * (self.w - 2 * self.pad)
        v = self.h - self.pad - (y - y0) / (y1 - y0) * (self.h - 2 * self.pad)
        return u, v

    def polyline(self, xs, ys, color="black", width=1.0):
        pts = " ".join("%.2f,%.2f" % self._px(x, y) for x, y in zip(xs, ys)
                       if math.isfinite(x) and math.isfinite(y))
        self.items.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                          f'stroke-width="{width}"/>')

    def scatter(self, xs, ys, color="blue", r=1.5):
        for x, y in zip(xs, ys):
            u, v = self._px(x, y)
            self.items.append(f'<circle cx="{u:.2f}" cy="{v:.2f}" r="{r}" fill="{color}"/>')

    def rect(self, x, y, dx, dy, color):
        u0, v0 = self._px(x, y + dy)
        u1, v1 = self._px(x + dx, y)
        self.items.append(f'<rect x="{u0:.2f}" y="{v0:.2f}" width="{u1 - u0:.2f}" '
                          f'height="{v1 - v0:.2f}" fill="{color}"/>')

    def text(self, x, y, s):
        u, v = self._px(x, y)
        self.items.append(f'<text x="{u:.2f}" y="{v:.2f}" font-size="11">{s}</text>')

    def render(self) -> str:
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{self.w}" height="{self.h}" viewBox="0 0 {self.w} {self.h}">\n')
        return head + "\n".join(self.items) + "\n</svg>\n"

    def save(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render())
        return path
