"""Timing comparison of the grid-scan kernel backends.

Runs the joint-grid equilibrium scan at a few resolutions with both the
compiled extension (when available) and the pure-numpy fallback, and
prints a small table of wall times plus an agreement check. Usage:

    python3 benchmarks/bench_grid.py [--repeats N]
"""

import argparse
import time

import numpy as np

from fleetcontest import two_region_spec
from fleetcontest._kernels import BACKEND, _grid_py

try:
    from fleetcontest._kernels import _grid
except ImportError:
    _grid = None


def scan_args(spec, cells):
    bm, bc, eps = spec.beta_m, spec.beta_c, spec.eps
    return (
        bm[0], bm[1], bc[0], bc[1], eps[0], eps[1],
        spec.fleet_a, spec.fleet_b, cells, 2 * cells,
    )


def time_backend(fn, args, repeats):
    best = np.inf
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repetitions per case (best is reported)")
    cli = parser.parse_args()

    spec = two_region_spec(1.0)
    print(f"active backend: {BACKEND}")
    header = f"{'cells/player':>14} {'numpy':>12} {'compiled':>12} {'speedup':>9}  agree"
    print(header)
    print("-" * len(header))

    for cells in (250, 500, 1000, 2000):
        args = scan_args(spec, cells)
        py_time, py_out = time_backend(_grid_py.two_region_scan, args, cli.repeats)
        if _grid is None:
            print(f"{cells:>8} x {2 * cells:<5} {py_time * 1e3:>10.1f}ms {'absent':>12}")
            continue
        c_time, c_out = time_backend(_grid.two_region_scan, args, cli.repeats)
        agree = "yes" if py_out == c_out else f"NO {py_out} vs {c_out}"
        print(
            f"{cells:>8} x {2 * cells:<5} {py_time * 1e3:>10.1f}ms "
            f"{c_time * 1e3:>10.1f}ms {py_time / c_time:>8.1f}x  {agree}"
        )


if __name__ == "__main__":
    main()
