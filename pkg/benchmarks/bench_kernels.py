"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--points N] [--steps N] [--repeat N]

Both backends are imported side by side, so the PTINVIS_DISABLE_NUMBA flag
is irrelevant here. Results are also checked for agreement. In each layer the
numpy RK4 raises the constant one-step map to a matrix power (O(log N))
instead of stepping, so it beats the compiled step loop there.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ptinvis import _kernels as kern


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--points", type=int, default=200_000, help="K samples for the closed-form kernel")
    p.add_argument("--steps", type=int, default=200_000, help="RK4 steps across the slab")
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)

    if kern.closed_form_numba is None:
        print("numba is not importable; only the numpy backend is available")
        return 1

    n1, n2 = 3.4 - 0.003421628j, 3.4 + 0.003421628j
    K = np.linspace(1995.0, 2005.0, args.points)
    half = args.steps // 2

    # warm up the JIT so compile time is not measured
    kern.closed_form_numba(n1, n2, K[:8])
    kern.rk4_fundamental_numba(n1, n2, 10.0, 50)

    rows = []
    a, b = kern.closed_form_numba(n1, n2, K), kern.closed_form_numpy(n1, n2, K)
    rows.append(
        (
            f"closed form, {args.points} K values",
            best_of(lambda: kern.closed_form_numba(n1, n2, K), args.repeat),
            best_of(lambda: kern.closed_form_numpy(n1, n2, K), args.repeat),
            float(np.max(np.abs(a - b)) / np.max(np.abs(b))),
        )
    )
    a, b = kern.rk4_fundamental_numba(n1, n2, 2000.0, half), kern.rk4_fundamental_numpy(n1, n2, 2000.0, half)
    rows.append(
        (
            f"RK4 over {2 * half} steps (numpy: matrix power)",
            best_of(lambda: kern.rk4_fundamental_numba(n1, n2, 2000.0, half), args.repeat),
            best_of(lambda: kern.rk4_fundamental_numpy(n1, n2, 2000.0, half), args.repeat),
            float(np.max(np.abs(a - b)) / np.max(np.abs(b))),
        )
    )

    print(f"{'kernel':42s} {'numba [s]':>11s} {'numpy [s]':>11s} {'speedup':>8s} {'rel diff':>9s}")
    for name, t_jit, t_np, diff in rows:
        print(f"{name:42s} {t_jit:11.5f} {t_np:11.5f} {t_np / t_jit:8.2f} {diff:9.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
