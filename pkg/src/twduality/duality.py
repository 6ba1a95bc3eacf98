"""The duality engine: flap families, condition (i), minimalization,
bramble synthesis, and exact tree-width with a witness decomposition.

The lower-bound pipeline starts from the family of all k-flaps, which
hits every partial (<k)-decomposition exactly when tw >= k, then greedily
removes inclusion-minimal members while that hitting property survives.
The connected members of the resulting minimal family form a bramble of
order at least k+1.  Tree-width itself is the first k at which the full
flap family fails the hitting property, minus one; the witness
decomposition is rebuilt from the separators the decision recursion chose.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .bramble import Bramble, min_cover, verify_bramble
from .decomposition import TreeDecomposition, verify_td, width
from .errors import NotUpwardClosed, TooLarge, TreewidthTooSmall
from .graph import (
    Graph,
    bit_list,
    bits,
    components,
    is_connected_set,
    neighborhood,
    popcount,
    touches,
)


@dataclass(frozen=True)
class FlapFamily:
    """An upward-closed family of k-flaps (members/removed partition the
    full flap universe)."""

    k: int
    universe_n: int
    members: frozenset
    removed: frozenset


@dataclass(frozen=True)
class DualityCertificates:
    tw: int
    decomposition: TreeDecomposition
    bramble: Bramble
    minimal_family: FlapFamily


def is_k_flap(g: Graph, x: int, k: int) -> bool:
    """True iff x arises as a k-flap of some partial (<k)-decomposition:
    x nonempty, |N(x)| <= k, and the x-leaf can be padded big
    (n >= k+1 or |x u N(x)| > k)."""
    g.check_mask(x)
    if not x:
        return False
    if popcount(neighborhood(g, x)) > k:
        return False
    return g.n >= k + 1 or popcount(x | neighborhood(g, x)) > k


def _neigh_table(g: Graph) -> list:
    """nb[x] = N(x) for every subset mask x, by one-bit extension."""
    size = 1 << g.n
    closed = [0] * size
    for x in range(1, size):
        low = x & -x
        closed[x] = closed[x ^ low] | g.adj[low.bit_length() - 1] | low
    return [closed[x] & ~x for x in range(size)]


def _flap_member_array(g: Graph, k: int, nb=None) -> np.ndarray:
    """uint8 table over all subset masks: 1 iff the mask is a k-flap."""
    if nb is None:
        nb = _neigh_table(g)
    size = 1 << g.n
    member = np.zeros(size, dtype=np.uint8)
    pad_always = g.n >= k + 1
    for x in range(1, size):
        nx = nb[x]
        if popcount(nx) <= k and (pad_always or popcount(x | nx) > k):
            member[x] = 1
    return member


def flap_universe(g: Graph, k: int, max_n: int = 16) -> FlapFamily:
    """The family of all k-flaps of g."""
    if g.n > max_n:
        raise TooLarge(f"n={g.n} exceeds enumeration bound {max_n}")
    nb = _neigh_table(g)
    members = frozenset(
        x for x in range(1, 1 << g.n) if _is_flap_fast(g, x, nb[x], k)
    )
    return FlapFamily(k=k, universe_n=g.n, members=members, removed=frozenset())


def _is_flap_fast(g: Graph, x: int, nx: int, k: int) -> bool:
    if popcount(nx) > k:
        return False
    return g.n >= k + 1 or popcount(x | nx) > k


def _run_kernel(g: Graph, k: int, member: np.ndarray):
    size = 1 << g.n
    memo = np.zeros(size, dtype=np.uint8)
    choice = np.full(size, -1, dtype=np.int64)
    found, top_w = _kernels.exists_avoiding_scheme(g.adj_array(), g.n, k, member, memo, choice)
    return bool(found), int(top_w), choice


def _check_family(g: Graph, fam: FlapFamily) -> None:
    """Every member a k-flap; upward-closed within the flap universe."""
    if fam.universe_n != g.n:
        raise NotUpwardClosed("family universe does not match the graph")
    nb = _neigh_table(g)
    size = 1 << g.n
    for m in fam.members:
        if m <= 0 or m >= size or not _is_flap_fast(g, m, nb[m], fam.k):
            raise NotUpwardClosed(f"member {bit_list(m)} is not a {fam.k}-flap")
    # dominated[x] = some member is a subset of x
    dominated = bytearray(size)
    members = fam.members
    for x in range(1, size):
        if x in members:
            dominated[x] = 1
            continue
        m = x
        while m:
            low = m & -m
            if dominated[x ^ low]:
                dominated[x] = 1
                break
            m ^= low
    for x in range(1, size):
        if dominated[x] and x not in members and _is_flap_fast(g, x, nb[x], fam.k):
            raise NotUpwardClosed(
                f"flap {bit_list(x)} contains a member but is not a member"
            )


def condition_i_holds(g: Graph, k: int, fam: FlapFamily, check: bool = True) -> bool:
    """True iff every partial (<k)-decomposition of g has a flap in fam.

    Decided by the nested-refinement recursion over regions: a region X
    with small boundary is refinable when X is outside fam or some small
    separator W (N(X) <= W <= X u N(X), W meeting X) splits X into
    refinable pieces; the condition fails iff some W <= V of size <= k
    leaves only refinable components.
    """
    if check:
        _check_family(g, fam)
    size = 1 << g.n
    member = np.zeros(size, dtype=np.uint8)
    for m in fam.members:
        member[m] = 1
    found, _, _ = _run_kernel(g, k, member)
    return not found


def treewidth(g: Graph, max_n: int = 16):
    """Exact tree-width and a verifying witness decomposition of that width.

    Runs the condition-(i) recursion against the full flap family for
    k = 0, 1, ...; the first k admitting a flap-free scheme gives
    tw = k - 1 and the scheme's separator choices rebuild the witness.
    """
    if g.n > max_n:
        raise TooLarge(f"n={g.n} exceeds enumeration bound {max_n}")
    if g.n == 0:
        return -1, TreeDecomposition(bags=(0,), tree_edges=())
    nb = _neigh_table(g)
    for k in range(0, g.n + 1):
        member = _flap_member_array(g, k, nb)
        found, top_w, choice = _run_kernel(g, k, member)
        if not found:
            continue
        bags = [top_w]
        edges = []

        def expand(parent: int, region: int) -> None:
            w = int(choice[region])
            if w == -1:
                bags.append(region | nb[region])
                edges.append((parent, len(bags) - 1))
                return
            bags.append(w)
            idx = len(bags) - 1
            edges.append((parent, idx))
            inner = region & ~w
            for comp in components(g, g.full_mask & ~inner):
                expand(idx, comp)

        for comp in components(g, top_w):
            expand(0, comp)
        d = TreeDecomposition(bags=tuple(bags), tree_edges=tuple(edges))
        assert verify_td(g, d) is None, "witness decomposition must verify"
        assert width(d) == k - 1, "witness width must equal the tree-width"
        return k - 1, d
    raise AssertionError("unreachable: k = n always admits the single-bag scheme")


def treewidth_dp_oracle(g: Graph, max_n: int = 20) -> int:
    """Independent exact tree-width via subset DP over elimination orders."""
    if g.n > max_n:
        raise TooLarge(f"n={g.n} exceeds enumeration bound {max_n}")
    if g.n == 0:
        return -1
    return int(_kernels.dp_treewidth(g.adj_array(), g.n))


def _removal_key(m: int):
    return (popcount(m), bit_list(m))


def minimalize(g: Graph, k: int, max_n: int = 14) -> FlapFamily:
    """Shrink the full k-flap family to one from which no inclusion-minimal
    member can be removed without breaking condition (i).

    Candidates are tried in (size, lexicographic) order; a removal that
    breaks condition (i) stays broken under any further shrinking (the
    condition is monotone in the family), so failed candidates are kept
    permanently.  Members of the result pairwise touch.
    """
    if g.n > max_n:
        raise TooLarge(f"n={g.n} exceeds enumeration bound {max_n}")
    universe = flap_universe(g, k, max_n=max_n)
    members = set(universe.members)
    removed = set()

    def cond(current: set) -> bool:
        fam = FlapFamily(k=k, universe_n=g.n, members=frozenset(current), removed=frozenset())
        return condition_i_holds(g, k, fam, check=False)

    if not cond(members):
        raise TreewidthTooSmall(f"tree-width of g is below k={k}")

    kept = set()
    while True:
        candidates = sorted(
            (
                c
                for c in members
                if c not in kept
                and not any(m != c and m & ~c == 0 for m in members)
            ),
            key=_removal_key,
        )
        progressed = False
        for c in candidates:
            members.discard(c)
            if cond(members):
                removed.add(c)
                progressed = True
                break
            members.add(c)
            kept.add(c)
        if not progressed:
            break

    for a in members:
        for b in members:
            if a < b and not touches(g, a, b):
                raise AssertionError(
                    f"minimal family members {bit_list(a)} and {bit_list(b)} "
                    "do not touch"
                )
    return FlapFamily(k=k, universe_n=g.n, members=frozenset(members), removed=frozenset(removed))


def extract_bramble(g: Graph, fam: FlapFamily) -> Bramble:
    """The connected members of fam, verified as a bramble."""
    elements = tuple(
        m for m in sorted(fam.members, key=_removal_key) if is_connected_set(g, m)
    )
    b = Bramble(elements=elements, n=g.n)
    viol = verify_bramble(g, b.elements)
    if viol is not None:
        raise AssertionError(f"extracted elements are not a bramble: {viol}")
    return b


def synthesize_bramble(g: Graph, k: int, max_n: int = 14) -> Bramble:
    """A verified bramble of order >= k+1 (requires tw(g) >= k)."""
    fam = minimalize(g, k, max_n=max_n)
    b = extract_bramble(g, fam)
    order = popcount(min_cover(g, b, max_elements=max(64, len(b.elements))))
    if order < k + 1:
        raise AssertionError(f"synthesized bramble has order {order} < {k + 1}")
    return replace(b, claimed_order=order)


def duality_certificates(g: Graph, max_n: int = 14) -> DualityCertificates:
    """tw, a width-tw decomposition, and an order-(tw+1) bramble, verified."""
    if g.n < 1:
        raise ValueError("duality certificates need at least one vertex")
    if g.n > max_n:
        raise TooLarge(f"n={g.n} exceeds enumeration bound {max_n}")
    tw, d = treewidth(g, max_n=max_n)
    fam = minimalize(g, tw, max_n=max_n)
    b = extract_bramble(g, fam)
    order = popcount(min_cover(g, b, max_elements=max(64, len(b.elements))))
    # the backward direction bounds the order by tw + 1
    from .bramble import find_covering_bag

    witness = find_covering_bag(g, d, b)
    assert all(witness.cover & e for e in b.elements)
    assert order == tw + 1, f"order {order} != tw + 1 = {tw + 1}"
    return DualityCertificates(
        tw=tw,
        decomposition=d,
        bramble=replace(b, claimed_order=order),
        minimal_family=fam,
    )
