"""Compiled vs pure-Python kernel timings.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per (kernel, size) with the best-of-repeat wall time of each
backend and the speed-up.  Both backends are checked for bitwise agreement
before timing.
"""
import argparse
import timeit

import numpy as np

from charlier_zeros._backend import available, kernels

CASES = [
    ("eval_f64", dict(m=512, n=100)),
    ("eval_f64", dict(m=512, n=400)),
    ("eval_mp", dict(m=64, n=100, prec=160)),
    ("eval_mp", dict(m=64, n=200, prec=288)),
    ("aberth_sums", dict(m=200)),
    ("aberth_sums", dict(m=800)),
]


def _call(mod, name, z, p):
    zr, zi = z.real.copy(), z.imag.copy()
    if name == "eval_f64":
        return mod.eval_f64(zr, zi, p["n"], 1.0)
    if name == "eval_mp":
        return mod.eval_mp(zr, zi, p["n"], 1.0, p["prec"])
    return mod.aberth_sums(zr, zi)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if "cython" not in available():
        raise SystemExit("compiled kernels not built; run `pip install -e . --no-build-isolation`")
    cy, py = kernels("cython"), kernels("python")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<12} {'size':<22} {'cython [ms]':>12} {'python [ms]':>12} {'speed-up':>9}")
    for name, p in CASES:
        z = rng.uniform(0, 1, p["m"]) + 2j * rng.uniform(-1, 1, p["m"])
        a, b = _call(cy, name, z, p), _call(py, name, z, p)
        assert all(np.array_equal(u, v) for u, v in zip(a, b)), f"{name}: backends differ"
        t = {}
        for label, mod in (("cy", cy), ("py", py)):
            number = 3 if label == "py" and name != "eval_f64" else 10
            t[label] = min(timeit.repeat(lambda: _call(mod, name, z, p),
                                         number=number, repeat=args.repeat)) / number
        size = ", ".join(f"{k}={v}" for k, v in p.items())
        print(f"{name:<12} {size:<22} {1e3 * t['cy']:>12.3f} {1e3 * t['py']:>12.3f} "
              f"{t['py'] / t['cy']:>8.1f}x")


if __name__ == "__main__":
    main()
