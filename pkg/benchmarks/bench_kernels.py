#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Runs each hot kernel at a few dimensions plus one end-to-end null-space
search per backend, and prints the per-call times side by side. The jit
path is warmed before timing so compilation cost is excluded.

Usage: python3 benchmarks/bench_kernels.py [--repeats 20000]
"""

import argparse
import time

import numpy as np

from kronlift.kernels import _numpy as knp

try:
    from kronlift.kernels import _numba as knb
except ImportError:
    knb = None


def time_call(fn, args, repeats):
    fn(*args)  # warm caches / jit
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - t0) / repeats * 1e6  # microseconds


def kernel_cases(n, rng):
    x = rng.standard_normal(n)
    G = rng.standard_normal((n, n * n))
    R = rng.standard_normal((n, n**3))
    return [
        ("pair_products", (x,)),
        ("triple_products", (x,)),
        ("pair_jacobian", (x,)),
        ("triple_jacobian", (x,)),
        ("quad_contract", (G, x)),
        ("cubic_contract", (R, x)),
        ("quad_jacobian", (G, x)),
        ("cubic_jacobian", (R, x)),
    ]


def bench_kernels(repeats):
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18} {'n':>3} {'numpy us':>10} {'numba us':>10} {'speedup':>8}")
    for n in (4, 8, 16):
        for name, args in kernel_cases(n, rng):
            t_np = time_call(getattr(knp, name), args, repeats)
            if knb is None:
                print(f"{name:<18} {n:>3} {t_np:>10.2f} {'-':>10} {'-':>8}")
                continue
            t_nb = time_call(getattr(knb, name), args, repeats)
            print(f"{name:<18} {n:>3} {t_np:>10.2f} {t_nb:>10.2f} {t_np / t_nb:>8.1f}x")


def bench_search():
    # end-to-end: the search loop is where the kernels actually get hit
    from kronlift import kernels
    from kronlift.lift import build_lifted
    from kronlift.recovery import nullspace_search
    from kronlift.system_model import random_system

    lift = build_lifted(random_system(4, 2, seed=1,
                                      planted_root=np.arange(1.0, 5.0)))
    nullspace_search(lift, starts=4, seed=0)  # warm
    t0 = time.perf_counter()
    for seed in range(10):
        nullspace_search(lift, starts=16, seed=seed)
    elapsed = (time.perf_counter() - t0) / 10
    print(f"\nnullspace_search(n=4, 16 starts) with {kernels.BACKEND} backend: "
          f"{elapsed * 1e3:.1f} ms per call")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=20_000)
    args = parser.parse_args()
    if knb is None:
        print("numba backend unavailable; timing the numpy fallback only\n")
    bench_kernels(args.repeats)
    bench_search()


if __name__ == "__main__":
    main()
