"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--zeros 100000] [--repeat 3]

Both backends run on the same inputs; the script also reports the largest
disagreement between them so a speedup never hides a wrong answer.
"""

import argparse
import math
import time

import numpy as np

from landau_lab import _kernels_numpy, kernels
from landau_lab.zeros import cached_zeros, compute_zeros


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def cases(ordinates):
    taus = np.linspace(math.pi, 74920 - math.pi, 50_000)
    z_grid = np.linspace(1000.0, 75000.0, 200_000)
    return {
        "Z on 2e5 points": lambda b: kernels.z_values(z_grid, b),
        "bisect 2e4 brackets": lambda b: kernels.bisect_roots(ordinates[:20_000] - 1e-4, ordinates[:20_000] + 1e-4, 1e-9, b),
        "lambda sum, 1e5 zeros": lambda b: kernels.chunk_cos_sums(ordinates, math.log(2), 4096, b),
        "eta cycles 1..8264": lambda b: kernels.cycle_accumulate(ordinates, math.log(2), 1, 8264, b),
        "H trace, 5e4 taus": lambda b: kernels.window_sums(ordinates, 1.0, taus, 1e-12, b),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--zeros", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--compute", type=int, default=20_000, help="zeros for the end-to-end row (0 skips it)")
    args = ap.parse_args()

    try:
        numba_impl = kernels.get_impl("numba")
    except ImportError:
        raise SystemExit("numba is not installed; nothing to compare")
    ordinates = cached_zeros(args.zeros).ordinates

    print(f"{'kernel':<24}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}{'max diff':>12}")
    for name, fn in cases(ordinates).items():
        fn(numba_impl)  # compile / load from cache
        tn, a = best_of(lambda: fn(numba_impl), args.repeat)
        tp, b = best_of(lambda: fn(_kernels_numpy), args.repeat)
        a = a if isinstance(a, tuple) else (a,)
        b = b if isinstance(b, tuple) else (b,)
        diff = max(float(np.max(np.abs(np.asarray(x, dtype=complex) - np.asarray(y, dtype=complex))))
                   for x, y in zip(a, b))
        print(f"{name:<24}{tn:>12.4f}{tp:>12.4f}{tp / tn:>10.1f}{diff:>12.2e}")

    if args.compute:
        saved = kernels.impl
        timings, tables = [], []
        for impl in (numba_impl, _kernels_numpy):
            kernels.impl = impl
            t, table = best_of(lambda: compute_zeros(args.compute), 1)
            timings.append(t)
            tables.append(table.ordinates)
        kernels.impl = saved
        diff = float(np.max(np.abs(tables[0] - tables[1])))
        name = f"compute_zeros({args.compute})"
        print(f"{name:<24}{timings[0]:>12.4f}{timings[1]:>12.4f}{timings[1] / timings[0]:>10.1f}{diff:>12.2e}")


if __name__ == "__main__":
    main()
