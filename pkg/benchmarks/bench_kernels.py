"""Compare the numba and numpy batch kernels on exhaustive CD_N^(n) sweeps.

    python3 benchmarks/bench_kernels.py [--max-pulses 16] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from goodrhythm import kernels


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-pulses", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    # trigger compilation outside the timed region
    warm = kernels.cd_rows(5, 3)
    kernels.orbit_rows_numba(warm, 15)
    kernels.dav_fc_rows_numba(warm)
    kernels.rotation_period_rows_numba(warm)

    print(f"{'N':>3} {'n':>3} {'vectors':>9} {'kernel':<16} {'numpy ms':>9} {'numba ms':>9} {'speedup':>8}")
    for N in range(8, args.max_pulses + 1, 2):
        for n in (N // 3, N // 2):
            X = kernels.cd_rows(N, n)
            cases = {
                "orbit_rows": (lambda: kernels.orbit_rows_numpy(X, N * n),
                               lambda: kernels.orbit_rows_numba(X, N * n)),
                "dav_fc_rows": (lambda: kernels.dav_fc_rows_numpy(X),
                                lambda: kernels.dav_fc_rows_numba(X)),
                "rotation_period": (lambda: kernels.rotation_period_rows_numpy(X),
                                    lambda: kernels.rotation_period_rows_numba(X)),
            }
            for name, (slow, fast) in cases.items():
                a, b = slow(), fast()
                same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
                if not same:
                    raise SystemExit(f"backends disagree on {name} for N={N}, n={n}")
                tn, tb = best_of(slow, args.repeat), best_of(fast, args.repeat)
                print(f"{N:>3} {n:>3} {len(X):>9} {name:<16} {tn * 1e3:>9.2f} {tb * 1e3:>9.2f} {tn / tb:>7.1f}x")


if __name__ == "__main__":
    main()
