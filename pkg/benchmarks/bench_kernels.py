"""Compare the numba and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--sizes 8,10,12] [--repeats 3]

Times the two hot kernels (the condition-(i) avoiding-scheme search and
the elimination-order subset DP) on seeded random connected graphs and
prints a speedup table.
"""
import argparse
import random
import time

import numpy as np

from twduality import Graph
from twduality._kernels import python_impl
from twduality.duality import _flap_member_array

try:
    from twduality._kernels import numba_impl
except ImportError:
    numba_impl = None


def random_connected_graph(rng, n):
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    for _ in range(n):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def time_avoiding_scheme(impl, g, k, member, repeats):
    size = 1 << g.n
    best = float("inf")
    result = None
    for _ in range(repeats):
        memo = np.zeros(size, dtype=np.uint8)
        choice = np.full(size, -1, dtype=np.int64)
        t0 = time.perf_counter()
        result = impl.exists_avoiding_scheme(g.adj_array(), g.n, k, member, memo, choice)
        best = min(best, time.perf_counter() - t0)
    return best, (bool(result[0]), int(result[1]))


def time_dp(impl, g, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = int(impl.dp_treewidth(g.adj_array(), g.n))
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="8,10,12")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if numba_impl is None:
        print("numba backend unavailable; nothing to compare")
        return

    rng = random.Random(args.seed)
    print(f"{'kernel':<18}{'n':>4}{'k':>4}{'python':>12}{'numba':>12}{'speedup':>10}")
    for n in sizes:
        g = random_connected_graph(rng, n)
        k = max(1, n // 3)
        member = _flap_member_array(g, k)
        # warm up jit compilation outside the timed region
        time_avoiding_scheme(numba_impl, g, k, member, 1)
        tp, rp = time_avoiding_scheme(python_impl, g, k, member, args.repeats)
        tn, rn = time_avoiding_scheme(numba_impl, g, k, member, args.repeats)
        assert rp == rn, "backends disagree"
        print(f"{'avoiding-scheme':<18}{n:>4}{k:>4}{tp:>11.4f}s{tn:>11.4f}s{tp / tn:>9.1f}x")

        time_dp(numba_impl, g, 1)
        tp, rp = time_dp(python_impl, g, args.repeats)
        tn, rn = time_dp(numba_impl, g, args.repeats)
        assert rp == rn, "backends disagree"
        print(f"{'subset-dp':<18}{n:>4}{'-':>4}{tp:>11.4f}s{tn:>11.4f}s{tp / tn:>9.1f}x")


if __name__ == "__main__":
    main()
