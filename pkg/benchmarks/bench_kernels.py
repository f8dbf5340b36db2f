"""Compare the compiled and pure-Python kernel backends.

Times the three hot kernels and one end-to-end bootstrap, checks that both
backends agree, and prints a table. Usage::

    python3 benchmarks/bench_kernels.py [--n 229] [--J 99] [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from depcorr import _kernels_py, kernel_regression
from depcorr.bootstrap import bootstrap_rstar
from depcorr.kernel_regression import bandwidth_grid

try:
    from depcorr import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=229, help="sample size")
    ap.add_argument("--J", type=int, default=99, help="bootstrap replicates for the end-to-end case (>= 99)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _kernels_c is None:
        print("compiled backend not built; run `pip install -e . --no-build-isolation` first")
        return 1

    g = np.random.default_rng(args.seed)
    x = g.normal(size=args.n)
    y = np.sin(2 * x) + 0.3 * g.normal(size=args.n)
    hs = bandwidth_grid(x)
    z = np.linspace(-0.9, 0.95, 2001)

    cases = {
        "nw_fitted": lambda k: np.asarray(k.nw_fitted(x, y, float(hs[25]))),
        "loo_cv_profile (50 h)": lambda k: np.asarray(k.loo_cv_profile(x, y, hs)),
        "hyp2f1_series (2001 z)": lambda k: np.asarray(k.hyp2f1_series(1.5, -0.5, 30.5, z, 1e-15, 10_000)),
    }

    def end_to_end(k):
        saved = kernel_regression.kernels
        kernel_regression.kernels = k
        try:
            return bootstrap_rstar(x, y, J=args.J, seed=1).replicates
        finally:
            kernel_regression.kernels = saved

    cases[f"bootstrap_rstar (J={args.J})"] = end_to_end

    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'case':<28}{'cython (ms)':>14}{'numpy (ms)':>14}{'speedup':>10}{'max |diff|':>14}")
    for name, fn in cases.items():
        reps = 1 if name.startswith("bootstrap") else args.repeat
        tc, oc = best_of(lambda: fn(_kernels_c), reps)
        tp, op = best_of(lambda: fn(_kernels_py), reps)
        both_inf = np.isinf(oc) & (oc == op)  # underflowed candidates score inf on both
        with np.errstate(invalid="ignore"):
            diff = float(np.max(np.abs(np.where(both_inf, 0.0, oc - op))))
        print(f"{name:<28}{tc * 1e3:>14.2f}{tp * 1e3:>14.2f}{tp / tc:>9.1f}x{diff:>14.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
