"""Timing comparison of the two product-scan kernels.

The compiled route and the vectorized numpy route implement the same grid
scan; this script times both on identical grids and checks their minima
agree.  Run with GATEDISCRIM_DISABLE_NUMBA=1 to confirm the package works
end to end on the numpy route alone.

    python3 benchmarks/bench_product_search.py --grids 16,24,32,48 --repeats 5
"""

import argparse
import math
import time

import numpy as np

from gatediscrim import _kernels, canonical


def axes_for(grid):
    theta = np.linspace(0.0, math.pi, grid)
    phi = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    return theta, phi, theta, phi


def best_time(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grids", default="16,24,32,48",
                        help="comma-separated points per angle axis")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timed repetitions; the best run counts")
    args = parser.parse_args()
    grids = [int(g) for g in args.grids.split(",")]

    w = np.eye(4, dtype=complex).conj().T @ canonical.build_ud((math.pi / 8, 0, 0))
    if not _kernels.NUMBA_ENABLED:
        print("compiled route unavailable (disabled or numba missing); "
              "timing the numpy route only")
    else:
        # pay the one-off compile cost outside the timed region
        t0 = time.perf_counter()
        _kernels.product_scan_numba(w, *axes_for(8))
        print(f"jit compile/load: {time.perf_counter() - t0:.2f}s (cached afterwards)")

    print(f"{'grid':>6} {'states':>10} {'numpy':>10} {'numba':>10} "
          f"{'speedup':>8}  agreement")
    for grid in grids:
        ax = axes_for(grid)
        t_np, (v_np, i_np) = best_time(
            lambda: _kernels.product_scan_numpy(w, *ax), args.repeats)
        row = f"{grid:>6} {grid ** 4:>10} {t_np * 1e3:>8.1f}ms"
        if _kernels.NUMBA_ENABLED:
            t_nb, (v_nb, i_nb) = best_time(
                lambda: _kernels.product_scan_numba(w, *ax), args.repeats)
            agree = "values match" if abs(v_np - v_nb) <= 1e-12 else (
                f"VALUES DIFFER by {abs(v_np - v_nb):.2e}")
            row += f" {t_nb * 1e3:>8.1f}ms {t_np / t_nb:>7.1f}x  {agree}"
        else:
            row += f" {'-':>10} {'-':>8}"
        print(row)
    print(f"reference minimum at grid {grids[-1]}: {v_np:.12f} "
          f"(analytic cos(pi/8) = {math.cos(math.pi / 8):.12f})")


if __name__ == "__main__":
    main()
