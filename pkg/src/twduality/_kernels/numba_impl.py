"""numba-compiled kernels; see python_impl for the reference semantics.

Bitmasks live in int64 scalars, membership/memo tables in uint8 arrays of
size 2^n, choices in int64 arrays.  Iteration orders match python_impl
exactly so the two backends are interchangeable.
"""
import numpy as np
from numba import boolean, int64, njit, uint8


@njit(int64(int64), cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(int64(int64), cache=True)
def _ctz(x):
    v = 0
    while not (x >> v) & 1:
        v += 1
    return v


@njit(int64(int64[:], int64), cache=True)
def _neigh(adj, x):
    r = 0
    m = x
    while m:
        low = m & -m
        r |= adj[_ctz(low)]
        m ^= low
    return r & ~x


@njit(int64(int64[:], int64, int64), cache=True)
def _component_of(adj, region, v):
    comp = int64(1) << v
    frontier = comp
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[_ctz(low)]
            m ^= low
        nxt &= region & ~comp
        comp |= nxt
        frontier = nxt
    return comp


@njit(boolean(int64[:], int64, uint8[:], uint8[:], int64[:], int64), cache=True)
def _refinable(adj, k, member, memo, choice, x):
    if memo[x] != 0:
        return memo[x] == 1
    if member[x] == 0:
        memo[x] = 1
        choice[x] = -1
        return True
    nx = _neigh(adj, x)
    sub = x
    while True:
        if sub != 0:
            w = nx | sub
            if _popcount(w) <= k:
                region = x & ~w
                allok = True
                r = region
                while r:
                    comp = _component_of(adj, region, _ctz(r))
                    if not _refinable(adj, k, member, memo, choice, comp):
                        allok = False
                        break
                    r &= ~comp
                if allok:
                    memo[x] = 1
                    choice[x] = w
                    return True
        if sub == 0:
            break
        sub = (sub - 1) & x
    memo[x] = 2
    return False


@njit(cache=True)
def exists_avoiding_scheme(adj, n, k, member, memo, choice):
    full = (int64(1) << n) - 1
    for w in range(full + 1):
        if _popcount(w) > k:
            continue
        region = full & ~w
        allok = True
        r = region
        while r:
            comp = _component_of(adj, region, _ctz(r))
            if not _refinable(adj, k, member, memo, choice, comp):
                allok = False
                break
            r &= ~comp
        if allok:
            return True, int64(w)
    return False, int64(-1)


@njit(int64(int64[:], int64), cache=True)
def dp_treewidth(adj, n):
    if n == 0:
        return -1
    full = (int64(1) << n) - 1
    dp = np.zeros(full + 1, dtype=np.int64)
    dp[0] = -1
    for s in range(1, full + 1):
        best = n
        m = s
        while m:
            low = m & -m
            v = _ctz(low)
            comp = _component_of(adj, s, v)
            q = _popcount(_neigh(adj, comp) & ~s)
            prev = dp[s & ~low]
            cand = prev if prev > q else q
            if cand < best:
                best = cand
            m ^= low
        dp[s] = best
    return dp[full]
