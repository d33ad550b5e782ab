"""Command line: ``charlier {roots,curve,verify,figure}``.

Exit codes: 0 success, 2 invalid flags, 3 non-convergence, 4 failed
invariant or check.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import errors
from .curve import trace_curve
from .figures import emit
from .formats import write_csv
from .roots import find_roots
from .verify import run_verification

EXIT_OK, EXIT_FLAGS, EXIT_CONVERGENCE, EXIT_INVARIANT = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAGS, f"{self.prog}: error: {message}\n")


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return v


def _fraction(s: str) -> float:
    # accepts 1/12 style values as well as decimals
    if "/" in s:
        p, q = s.split("/", 1)
        return _positive_float(str(float(p) / float(q)))
    return _positive_float(s)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="charlier", description="Zeros of rescaled Charlier polynomials "
                "with negative parameter and their limiting distribution.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    r = sub.add_parser("roots", help="compute all roots, write re,im,residual CSV")
    r.add_argument("--n", type=_positive_int, required=True)
    r.add_argument("--a", type=_fraction, required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", type=Path, required=True)

    c = sub.add_parser("curve", help="trace the attractor arc, write t,x,y,rho,density CSV")
    c.add_argument("--a", type=_fraction, required=True)
    c.add_argument("--samples", type=_positive_int, default=513)
    c.add_argument("--out", type=Path, required=True)

    v = sub.add_parser("verify", help="compare roots with the limiting measure")
    v.add_argument("--n", type=_positive_int, required=True)
    v.add_argument("--a", type=_fraction, required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", type=Path, required=True)

    f = sub.add_parser("figure", help="emit CSV data and an SVG for a figure")
    f.add_argument("--which", type=int, choices=range(1, 6), required=True)
    f.add_argument("--out", type=Path, required=True, help="output directory")
    f.add_argument("--n", type=_positive_int, default=100)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--samples", type=_positive_int, default=513)
    return p


def cmd_roots(n: int, a: float, seed: int, out_path: Path) -> int:
    rs = find_roots(n, a, seed)
    write_csv(out_path, ["re", "im", "residual"],
              zip(rs.roots.real, rs.roots.imag, rs.residuals))
    return EXIT_OK


def cmd_curve(a: float, samples: int, out_path: Path) -> int:
    if samples < 2:
        raise errors.DomainError("--samples must be at least 2")
    c = trace_curve(a, samples)
    write_csv(out_path, ["t", "x", "y", "rho", "density"],
              zip(c.t, c.x, c.y, c.rho, c.density))
    return EXIT_OK


def cmd_verify(n: int, a: float, seed: int, out_path: Path) -> int:
    rep = run_verification(n, a, seed)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(rep.to_text())
    return rep.exit_code


def cmd_figure(which: int, out_dir: Path, n: int = 100, seed: int = 0,
               samples: int = 513) -> int:
    emit(which, out_dir, n=n, seed=seed, samples=samples)
    return EXIT_OK


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, errors.DomainError):
        return EXIT_FLAGS
    if isinstance(exc, (errors.NonConvergenceError, errors.BracketError)):
        return EXIT_CONVERGENCE
    return EXIT_INVARIANT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "roots":
            code = cmd_roots(args.n, args.a, args.seed, args.out)
        elif args.cmd == "curve":
            code = cmd_curve(args.a, args.samples, args.out)
        elif args.cmd == "verify":
            code = cmd_verify(args.n, args.a, args.seed, args.out)
        else:
            code = cmd_figure(args.which, args.out, args.n, args.seed, args.samples)
    except errors.CharlierError as exc:
        print(f"charlier: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    return code


if __name__ == "__main__":
    sys.exit(main())
