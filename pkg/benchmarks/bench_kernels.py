"""Benchmark the jitted kernels against the pure-Python fallbacks.

Both code paths live in alfrod._kernels: the exported names are njit-wrapped
unless ALFROD_DISABLE_NUMBA is set, and the plain originals are always
reachable under the *_py suffix, so a single process can time both.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from alfrod import _kernels
from alfrod.examples import chen_teo
from alfrod.metric import h_metric_constant


def timeit(fn, args, repeat):
    fn(*args)  # warm-up / JIT compile
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def main():
    rod = chen_teo(0.3)
    f = rod.f
    hc = h_metric_constant(f)
    rng = np.random.default_rng(7)
    rhos = rng.uniform(0.5, 5.0, 2000)
    zs = rng.uniform(-2.0, 2.0, 2000)

    cases = [
        ("potential_grid (2000 pts)",
         _kernels.potential_grid, _kernels.potential_grid_py,
         (f.A, f.kink_z, f.kink_a, rhos, zs), 20),
        ("metric_matrix",
         _kernels.metric_matrix, _kernels.metric_matrix_py,
         (f.A, f.kink_z, f.kink_a, hc, False, 2.0, -1.0), 2000),
        ("ricci_fd",
         _kernels.ricci_fd, _kernels.ricci_fd_py,
         (f.A, f.kink_z, f.kink_a, hc, False, 2.0, -1.0, 1e-3), 50),
        ("ricci_fd_richardson",
         _kernels.ricci_fd_richardson, _kernels.ricci_fd_richardson_py,
         (f.A, f.kink_z, f.kink_a, hc, False, 2.0, -1.0, 1e-3), 20),
    ]

    mode = "numba" if _kernels.NUMBA_ENABLED else "python (fallback selected)"
    print(f"exported kernel path: {mode}")
    print(f"{'kernel':<28} {'exported':>12} {'pure python':>12} {'speedup':>9}")
    for name, fast, slow, args, repeat in cases:
        t_fast = timeit(fast, args, repeat)
        t_slow = timeit(slow, args, max(1, repeat // 10))
        print(f"{name:<28} {t_fast * 1e6:>10.1f}us {t_slow * 1e6:>10.1f}us "
              f"{t_slow / t_fast:>8.1f}x")


if __name__ == "__main__":
    main()
