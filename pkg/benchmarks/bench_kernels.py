#!/usr/bin/env python3
"""Compare the compiled term-map kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]

The workloads mirror the hot paths: expanding powers of a trinomial
(certificate products), multiplying dense random Laurent supports, and
iterating a push map on a growing support.
"""

import argparse
import random
import time

from sigmatrop import _kernels_py as python_impl

try:
    from sigmatrop import _speedups as cython_impl
except ImportError:
    cython_impl = None


def trinomial_power(impl, k=14):
    f = {(1, 0): 1, (0, 1): 1, (0, 0): 1}
    acc = {(0, 0): 1}
    for _ in range(k):
        acc = impl.term_mul(acc, f)
    return len(acc)


def dense_product(impl, terms=70, rank=3, seed=5):
    rng = random.Random(seed)

    def rand():
        out = {}
        while len(out) < terms:
            g = tuple(rng.randint(-6, 6) for _ in range(rank))
            out[g] = rng.randint(-50, 50) or 1
        return out

    a, b = rand(), rand()
    return len(impl.term_mul(a, b))


def push_iteration(impl, steps=60):
    phi = {(1,): 1, (2,): -3, (-1,): 2}
    vec = {(0,): 1}
    for _ in range(steps):
        vec = impl.term_mul(vec, phi)
    return len(vec)


WORKLOADS = [
    ("trinomial^14", trinomial_power),
    ("dense 70x70 product", dense_product),
    ("push iteration x60", push_iteration),
]


def best_time(fn, impl, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(impl)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if cython_impl is None:
        print("compiled extension not available; showing pure Python only")
    header = f"{'workload':<22} {'python':>10} {'cython':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, fn in WORKLOADS:
        t_py, r_py = best_time(fn, python_impl, args.repeats)
        if cython_impl is not None:
            t_cy, r_cy = best_time(fn, cython_impl, args.repeats)
            assert r_py == r_cy, "backends disagree"
            print(f"{name:<22} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms "
                  f"{t_py / t_cy:>8.2f}x")
        else:
            print(f"{name:<22} {t_py * 1e3:>8.2f}ms {'-':>10} {'-':>9}")


if __name__ == "__main__":
    main()
