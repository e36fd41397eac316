"""Benchmark the sweep kernel: numba JIT path vs pure-numpy fallback.

Runs the same dense sensitivity/specificity grid through both backends
and prints wall-clock timings plus an agreement check. The numpy path is
forced via the same mechanism the QBAKIT_DISABLE_NUMBA env flag uses, so
the comparison exercises exactly the production code paths.

Usage: python benchmarks/bench_sweep.py [--step 2e-4] [--repeats 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qbakit._kernels import backend, correct_grid
from qbakit.sweep import SweepSpec, grid_axis
from qbakit.tables import ObservedTable


def run(force: str | None, args, axes) -> tuple[float, tuple]:
    sens, spec = axes
    table = ObservedTable(1000.0, 800.0, 1_000_000.0, 1_000_000.0)
    best = float("inf")
    out = None
    for _ in range(args.repeats):
        start = time.perf_counter()
        out = correct_grid(
            table.a, table.b, table.n_target, table.n_comparator,
            sens, spec, force=force,
        )
        best = min(best, time.perf_counter() - start)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--step", type=float, default=2e-4)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    sens = grid_axis(0.05, 1.0, args.step)
    spec = grid_axis(0.05, 1.0, args.step)
    cells = sens.size * spec.size
    print(f"grid: {sens.size} x {spec.size} = {cells:,} cells")
    print(f"active backend: {backend()}")

    t_numpy, out_numpy = run("numpy", args, (sens, spec))
    print(f"numpy   best of {args.repeats}: {t_numpy:.3f}s "
          f"({cells / t_numpy / 1e6:.1f}M cells/s)")

    if backend() == "numba":
        # warm-up compile outside the timed region
        run("numba", argparse.Namespace(repeats=1), (sens[:4], spec[:4]))
        t_numba, out_numba = run("numba", args, (sens, spec))
        print(f"numba   best of {args.repeats}: {t_numba:.3f}s "
              f"({cells / t_numba / 1e6:.1f}M cells/s)")
        print(f"speedup: {t_numpy / t_numba:.2f}x")
        same = (
            np.array_equal(out_numpy[0], out_numba[0])
            and np.array_equal(out_numpy[1], out_numba[1], equal_nan=True)
            and np.array_equal(out_numpy[2], out_numba[2], equal_nan=True)
        )
        print(f"backends agree bitwise: {same}")
    else:
        print("numba unavailable or disabled; skipped JIT comparison")


if __name__ == "__main__":
    main()
