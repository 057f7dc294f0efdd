"""Compare the numba and pure-numpy kernel backends.

Run: python benchmarks/bench_kernels.py [--sizes 10000 100000 1000000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from holobeam import _accel, kernels


def make_batch(n, seed=0):
    rng = np.random.default_rng(seed)
    zr = rng.uniform(-5, 5, (n, 3))
    zi = -rng.normal(size=(n, 3))
    tr = rng.uniform(-5, 10, n)
    ti = -(np.linalg.norm(zi, axis=1) + rng.exponential(1.0, n))
    return zr, zi, tr, ti


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[10_000, 100_000, 1_000_000])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not _accel.HAS_NUMBA:
        print("numba not available; only the numpy backend can run")
        return

    # trigger compilation (or load from cache) before timing
    warm = make_batch(16)
    kernels.complex_distance_batch(warm[0], warm[1], backend="numba")
    kernels.green_batch(*warm, backend="numba")

    print(f"{'kernel':<10} {'N':>9} {'numpy (ms)':>11} {'numba (ms)':>11} {'speedup':>8}  max|diff|")
    for n in args.sizes:
        zr, zi, tr, ti = make_batch(n)
        for name, call in (
            ("distance", lambda b: kernels.complex_distance_batch(zr, zi, backend=b)),
            ("green", lambda b: kernels.green_batch(zr, zi, tr, ti, backend=b)[0]),
        ):
            t_np = best_of(lambda: call("numpy"), args.repeat)
            t_nb = best_of(lambda: call("numba"), args.repeat)
            diff = np.max(np.abs(call("numpy") - call("numba")))
            print(f"{name:<10} {n:>9} {1e3 * t_np:>11.2f} {1e3 * t_nb:>11.2f} {t_np / t_nb:>7.1f}x  {diff:.1e}")


if __name__ == "__main__":
    main()
