"""Compare the numba and numpy kernel backends.

Run:  python benchmarks/bench_kernels.py [n_tets ...]
"""

import sys
import time

import numpy as np

from wctet import kernels


def _random_tets(n, seed=0):
    rng = np.random.default_rng(seed)
    T = rng.uniform(0.0, 1.0, (n, 4, 3))
    while True:
        vol6 = np.linalg.det(T[:, 1:] - T[:, :1])
        bad = np.abs(vol6) < 1e-3
        if not bad.any():
            return T
        T[bad] = rng.uniform(0.0, 1.0, (int(bad.sum()), 4, 3))


def _time(fn, *args, repeat=5):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(sizes):
    available = []
    for name in ("numpy", "numba"):
        try:
            kernels.use_backend(name)
            kernels.warmup()
            available.append(name)
        except ImportError:
            print("backend %s unavailable, skipping" % name)
    print("%-10s %-8s %12s %12s" % ("kernel", "backend", "n_tets", "best (ms)"))
    for n in sizes:
        T = _random_tets(n)
        for name in available:
            kernels.use_backend(name)
            for label, fn, args in (
                    ("quality", kernels.quality_arrays, (T,)),
                    ("objective", kernels.min_objective, (T, 0)),
                    ("margins", kernels.wc_margins, (T,))):
                dt = _time(fn, *args)
                print("%-10s %-8s %12d %12.3f" % (label, name, n, dt * 1e3))


if __name__ == "__main__":
    sizes = [int(a) for a in sys.argv[1:]] or [100, 2000, 50000]
    main(sizes)
