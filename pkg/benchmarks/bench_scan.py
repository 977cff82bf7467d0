"""Time the numba kernel against the pure-numpy fallback on the exhaustive scan.

Usage:
    python benchmarks/bench_scan.py [--n 4] [--repeat 3]

The numba kernel is warmed up once before timing so compilation is not
billed to the measurement.  Both backends must return the identical
survivor list; the script asserts that before printing the table.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cimatroid.scan import HAVE_NUMBA, matroid_ci_masks
from cimatroid.ci import statement_count


def time_backend(n: int, backend: str, repeat: int) -> tuple[float, np.ndarray]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        started = time.perf_counter()
        result = matroid_ci_masks(n, backend=backend)
        best = min(best, time.perf_counter() - started)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4, choices=(2, 3, 4))
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    total = 1 << statement_count(args.n)
    print(f"scan space: 2**{statement_count(args.n)} = {total} structures on [{args.n}]")

    rows = []
    numpy_time, numpy_result = time_backend(args.n, "numpy", args.repeat)
    rows.append(("numpy", numpy_time, len(numpy_result)))

    if HAVE_NUMBA:
        matroid_ci_masks(args.n, backend="numba")  # warm up the jit
        numba_time, numba_result = time_backend(args.n, "numba", args.repeat)
        rows.append(("numba", numba_time, len(numba_result)))
        assert np.array_equal(numpy_result, numba_result), "backends disagree"
        print("backends agree on the survivor list")
    else:
        print("numba not importable; timing the fallback only")

    print(f"{'backend':<8} {'best of ' + str(args.repeat):>12} {'survivors':>10} {'structs/s':>14}")
    for name, seconds, survivors in rows:
        print(f"{name:<8} {seconds:>11.3f}s {survivors:>10} {total / seconds:>14.0f}")
    if len(rows) == 2:
        print(f"speedup numba over numpy: {rows[0][1] / rows[1][1]:.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
