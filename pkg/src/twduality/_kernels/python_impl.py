"""Pure-Python reference kernels (bitmask ints, same orders as numba_impl).

memo codes: 0 unknown, 1 refinable, 2 not refinable.
choice[x]: the separator W chosen for region x, or -1 when x simply falls
outside the membership table (terminal leaf).
"""
from __future__ import annotations


def _neigh(adj, x: int) -> int:
    r = 0
    m = x
    while m:
        low = m & -m
        r |= adj[low.bit_length() - 1]
        m ^= low
    return r & ~x


def _component_of(adj, region: int, v: int) -> int:
    comp = 1 << v
    frontier = comp
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        nxt &= region & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def _refinable(adj, k: int, member, memo, choice, x: int) -> bool:
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
            if w.bit_count() <= k:
                region = x & ~w
                allok = True
                r = region
                while r:
                    v = (r & -r).bit_length() - 1
                    comp = _component_of(adj, region, v)
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


def exists_avoiding_scheme(adj, n: int, k: int, member, memo, choice):
    """First W (ascending mask order, |W| <= k) whose removal leaves only
    refinable components, or (False, -1)."""
    adj = [int(a) for a in adj]
    full = (1 << n) - 1
    for w in range(full + 1):
        if w.bit_count() > k:
            continue
        region = full & ~w
        allok = True
        r = region
        while r:
            v = (r & -r).bit_length() - 1
            comp = _component_of(adj, region, v)
            if not _refinable(adj, k, member, memo, choice, comp):
                allok = False
                break
            r &= ~comp
        if allok:
            return True, w
    return False, -1


def dp_treewidth(adj, n: int) -> int:
    """min over elimination orders of the max eliminated-vertex degree,
    where the degree counts neighbors of the vertex's component among the
    not-yet-eliminated set."""
    if n == 0:
        return -1
    adj = [int(a) for a in adj]
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    dp[0] = -1
    for s in range(1, full + 1):
        best = n
        m = s
        while m:
            low = m & -m
            v = low.bit_length() - 1
            comp = _component_of(adj, s, v)
            q = (_neigh(adj, comp) & ~s).bit_count()
            prev = dp[s & ~low]
            cand = prev if prev > q else q
            if cand < best:
                best = cand
            m ^= low
        dp[s] = best
    return dp[full]
