"""Compare the compiled and pure-Python bound kernels.

    python3 benchmarks/bench_kernels.py [--nmax 50] [--grid 20] [--repeat 5]

Times ``log_bound_table`` for a single cell and for a full region scan with
each backend, checks the two agree, and prints the speedup.
"""
import argparse
import sys
import time

import numpy as np

from zastrig import _kernels_py, bounds

try:
    from zastrig import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def scan(kernel, grid, n_max):
    for x in np.linspace(0.0, 1.5, grid):
        for y in np.linspace(0.0, 1.5, grid):
            bounds.series_convergence_verdict(bounds.bound_tables(x, y, n_max, kernel=kernel))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nmax", type=int, default=50)
    p.add_argument("--grid", type=int, default=20)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)

    if _kernels is None:
        print("compiled extension not built; only the Python kernel is available")
        t = best_of(lambda: _kernels_py.log_bound_table(0.5, 0.5, args.nmax), args.repeat)
        print(f"python  single cell  {t * 1e3:9.3f} ms")
        return 0

    d_c, l_c = _kernels.log_bound_table(0.5, 0.4, args.nmax)
    d_p, l_p = _kernels_py.log_bound_table(0.5, 0.4, args.nmax)
    fin = np.isfinite(l_p)
    drift = float(np.max(np.abs(l_c[fin] - l_p[fin])))
    print(f"backend in use: {bounds.BACKEND}; max |log delta| difference {drift:.2e}")

    rows = []
    for label, fn_c, fn_p in [
        ("single cell", lambda: _kernels.log_bound_table(0.5, 0.5, args.nmax),
         lambda: _kernels_py.log_bound_table(0.5, 0.5, args.nmax)),
        (f"scan {args.grid}x{args.grid}", lambda: scan(_kernels, args.grid, args.nmax),
         lambda: scan(_kernels_py, args.grid, args.nmax)),
    ]:
        tc = best_of(fn_c, args.repeat)
        tp = best_of(fn_p, max(1, args.repeat // 2))
        rows.append((label, tc, tp))

    print(f"{'case':<14}{'cython ms':>12}{'python ms':>12}{'speedup':>10}")
    for label, tc, tp in rows:
        print(f"{label:<14}{tc * 1e3:12.3f}{tp * 1e3:12.3f}{tp / tc:10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
