#!/usr/bin/env python3
"""Benchmark the numba-jitted kernels against the pure-numpy fallback.

Times the hot paths: symmetric-function maps, the three right-hand sides,
the simultaneous root iteration, and a full adaptive integration.  The
first jitted call compiles (or loads the disk cache); a warmup pass keeps
that out of the timings.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import math
import time

import numpy as np

from goldfish import _kernels_numpy
from goldfish._systems import SYS_CALOGERO, SYS_NEWGOLD

try:
    from goldfish import _kernels_numba
except ImportError:
    _kernels_numba = None


def sample_state(n, seed=42):
    rng = np.random.default_rng(seed)
    while True:
        z = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        if min(abs(z[i] - z[j]) for i in range(n) for j in range(i + 1, n)) > 1.2 / n:
            break
    v = 0.4 * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))
    return z, v


def bench(fn, args, repeats, inner=1):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def cases(n):
    z, v = sample_state(n)
    c = _kernels_numpy.elem_sym(z)
    t_eval = np.linspace(0.0, 2.0 * np.pi, 101)
    y0 = np.concatenate([z, v])
    return [
        (f"elem_sym (n={n})", "elem_sym", (z,), 200),
        (f"elem_sym_dot (n={n})", "elem_sym_dot", (z, v), 200),
        (f"rhs_newgold (n={n})", "rhs_newgold", (z, v, 1.0), 200),
        (f"rhs_calogero (n={n})", "rhs_calogero", (c, 1.0), 200),
        (f"aberth (n={n})", "aberth", (c, 0.4, 500), 50),
        (
            f"integrate newgold [0,2pi] (n={n})",
            "integrate",
            (SYS_NEWGOLD, y0, 1.0, t_eval, 1e-10, 1e-12),
            1,
        ),
        (
            f"integrate calogero [0,2pi] (n={n})",
            "integrate",
            (SYS_CALOGERO, y0, 1.0, t_eval, 1e-10, 1e-12),
            1,
        ),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--sizes", type=int, nargs="*", default=[4, 8, 16])
    args = parser.parse_args()

    if _kernels_numba is None:
        print("numba not importable: benchmarking the numpy fallback only")
    else:
        print("warming up (JIT compile or cache load)...")
        t0 = time.perf_counter()
        _kernels_numba.warmup()
        print(f"warmup: {time.perf_counter() - t0:.2f}s\n")

    header = f"{'kernel':<36} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        for label, name, call_args, inner in cases(n):
            t_np = bench(getattr(_kernels_numpy, name), call_args, args.repeats, inner)
            if _kernels_numba is None:
                print(f"{label:<36} {t_np * 1e3:>12.4f} {'-':>12} {'-':>9}")
                continue
            t_nb = bench(getattr(_kernels_numba, name), call_args, args.repeats, inner)
            speedup = t_np / t_nb if t_nb > 0 else math.inf
            print(f"{label:<36} {t_np * 1e3:>12.4f} {t_nb * 1e3:>12.4f} {speedup:>8.1f}x")
        print()


if __name__ == "__main__":
    main()
