"""Minimum vertex separators, Menger paths, and the side-restriction merge.

The canonical minimum separator between non-touching sets X and Y is the
minimum vertex cut closest to X: X is contracted into a source, Y into a
sink, every other vertex is split into an in/out pair of unit capacity, and
the separator is the boundary of the residual-reachable region.  The
returned paths run from X to the separator, are pairwise disjoint outside X
(two paths may share their starting X vertex, e.g. X = {1} on a cycle), and
meet the far side only in their separator endpoint.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .decomposition import (
    PartialDecomposition,
    TreeDecomposition,
    as_partial,
    flaps,
    verify_td,
)
from .errors import (
    BigInternalBag,
    InvalidWitness,
    NoSmallBag,
    TouchingFlaps,
    TouchingInputs,
)
from .graph import Graph, bit_list, bits, components, neighborhood, popcount, touches

_INF = 1 << 30


@dataclass(frozen=True)
class Separation:
    """s separates a from b: a u b = V, a n b = s, no edge joins a-s to b-s."""

    s: int
    a: int
    b: int


@dataclass(frozen=True)
class DisjointPaths:
    """One path per separator vertex, ordered by separator endpoint.

    Each path is a vertex tuple from a vertex of X to its separator vertex;
    paths are pairwise disjoint outside X.
    """

    paths: tuple

    def for_separator(self, s: int):
        for p in self.paths:
            if p[-1] == s:
                return p
        raise KeyError(s)


class _FlowNet:
    """Tiny Edmonds-Karp network with deterministic BFS order."""

    def __init__(self):
        self.cap = {}
        self.nbrs = {}

    def add(self, u, v, c):
        self.cap[(u, v)] = self.cap.get((u, v), 0) + c
        self.nbrs.setdefault(u, set()).add(v)
        self.nbrs.setdefault(v, set()).add(u)
        self.cap.setdefault((v, u), 0)

    def _residual(self, flow, u, v):
        return self.cap.get((u, v), 0) - flow.get((u, v), 0) + flow.get((v, u), 0)

    def max_flow(self, src, sink):
        flow = {}
        total = 0
        while True:
            prev = {src: None}
            q = deque([src])
            while q and sink not in prev:
                u = q.popleft()
                for v in sorted(self.nbrs.get(u, ())):
                    if v not in prev and self._residual(flow, u, v) > 0:
                        prev[v] = u
                        q.append(v)
            if sink not in prev:
                return total, flow
            # bottleneck along the path
            path = []
            cur = sink
            while prev[cur] is not None:
                path.append((prev[cur], cur))
                cur = prev[cur]
            amount = min(self._residual(flow, u, v) for u, v in path)
            for u, v in path:
                back = min(flow.get((v, u), 0), amount)
                if back:
                    flow[(v, u)] -= back
                rest = amount - back
                if rest:
                    flow[(u, v)] = flow.get((u, v), 0) + rest
            total += amount

    def reachable(self, flow, src):
        seen = {src}
        q = deque([src])
        while q:
            u = q.popleft()
            for v in sorted(self.nbrs.get(u, ())):
                if v not in seen and self._residual(flow, u, v) > 0:
                    seen.add(v)
                    q.append(v)
        return seen


def _vin(v):
    return 2 * v


def _vout(v):
    return 2 * v + 1


def min_xy_separator(g: Graph, x: int, y: int):
    """Canonical closest-to-X minimum X-Y separator with Menger paths.

    Returns (Separation, DisjointPaths); |paths| always equals |s|.
    """
    g.check_mask(x)
    g.check_mask(y)
    if not x or not y:
        raise ValueError("x and y must be nonempty")
    if touches(g, x, y):
        raise TouchingInputs(f"{bit_list(x)} and {bit_list(y)} touch")

    src = 2 * g.n
    sink = 2 * g.n + 1
    net = _FlowNet()
    net.nbrs.setdefault(src, set())
    net.nbrs.setdefault(sink, set())
    mid = g.full_mask & ~(x | y)
    for v in bits(mid):
        net.add(_vin(v), _vout(v), 1)
    for v in bits(neighborhood(g, x) & mid):
        net.add(src, _vin(v), _INF)
    for v in bits(neighborhood(g, y) & mid):
        net.add(_vout(v), sink, _INF)
    for u, v in g.edges:
        if (mid >> u) & 1 and (mid >> v) & 1:
            net.add(_vout(u), _vin(v), _INF)
            net.add(_vout(v), _vin(u), _INF)

    total, flow = net.max_flow(src, sink)
    reach = net.reachable(flow, src)
    s_mask = 0
    for v in bits(mid):
        if _vin(v) in reach and _vout(v) not in reach:
            s_mask |= 1 << v
    assert popcount(s_mask) == total, "cut size must equal max flow"

    a = s_mask
    for c in components(g, s_mask):
        if c & x:
            a |= c
    b = (g.full_mask & ~a) | s_mask
    sep = Separation(s=s_mask, a=a, b=b)
    paths = disjoint_paths_to_separator(g, x, s_mask, a)
    return sep, paths


def disjoint_paths_to_separator(g: Graph, src_set: int, s_mask: int, side: int) -> DisjointPaths:
    """|s| paths from src_set to the separator, inside its own side.

    Paths are recovered by decomposing a unit-capacity flow from the
    contracted source set to the separator vertices; they are pairwise
    disjoint outside src_set and meet the far side only in their endpoint.
    """
    if not s_mask:
        return DisjointPaths(paths=())
    src = 2 * g.n
    sink = 2 * g.n + 1
    interior = (side & ~s_mask) & ~src_set
    allowed = interior | s_mask
    net = _FlowNet()
    net.nbrs.setdefault(src, set())
    net.nbrs.setdefault(sink, set())
    for v in bits(allowed):
        net.add(_vin(v), _vout(v), 1)
    for v in bits(neighborhood(g, src_set) & allowed):
        net.add(src, _vin(v), _INF)
    for v in bits(s_mask):
        net.add(_vout(v), sink, _INF)
    for u, v in g.edges:
        if not ((allowed >> u) & 1 and (allowed >> v) & 1):
            continue
        # separator vertices are sinks: flow may enter but not pass through
        if not (s_mask >> u) & 1:
            net.add(_vout(u), _vin(v), _INF)
        if not (s_mask >> v) & 1:
            net.add(_vout(v), _vin(u), _INF)

    total, flow = net.max_flow(src, sink)
    if total != popcount(s_mask):
        raise InvalidWitness(
            f"only {total} paths reach a separator of size {popcount(s_mask)}"
        )

    def net_flow(u, v):
        return max(0, flow.get((u, v), 0) - flow.get((v, u), 0))

    residual = dict(flow)

    def take(u, v):
        # consume one unit of net flow on (u, v)
        residual[(u, v)] = residual.get((u, v), 0) - 1

    paths = []
    for _ in range(total):
        seq = []
        cur = src
        while cur != sink:
            nxt = None
            for cand in sorted(net.nbrs.get(cur, ())):
                if max(0, residual.get((cur, cand), 0) - residual.get((cand, cur), 0)) > 0:
                    nxt = cand
                    break
            assert nxt is not None, "flow decomposition ran dry"
            take(cur, nxt)
            if nxt not in (src, sink) and nxt % 2 == 0:
                seq.append(nxt // 2)
            cur = nxt
        first = seq[0]
        start = None
        for v in bits(g.adj[first] & src_set):
            start = v
            break
        assert start is not None
        paths.append((start, *seq))
    paths.sort(key=lambda p: p[-1])
    return DisjointPaths(paths=tuple(paths))


def restrict_to_side(
    p: PartialDecomposition,
    sep: Separation,
    side: str,
    flap_leaf: int,
    paths: DisjointPaths,
    g: Graph | None = None,
) -> PartialDecomposition:
    """Restrict p to one side of sep, removing the flap at flap_leaf.

    Implements the relabeling l'(t) = (l(t) & side) | {s : t on the tree
    path from flap_leaf to t_s}, where t_s is the node containing s nearest
    to flap_leaf (ties to the smallest node id).  The flap leaf's bag
    becomes exactly the separator.
    """
    if side not in ("a", "b"):
        raise ValueError("side must be 'a' or 'b'")
    keep = sep.a if side == "a" else sep.b
    base = p.base

    flap = None
    for f in flaps(p):
        if f.leaf == flap_leaf:
            flap = f
            break
    if flap is None:
        raise InvalidWitness(f"node {flap_leaf} carries no flap")
    x = flap.vertices
    if x & keep:
        raise InvalidWitness("the removed flap intersects the kept side")

    s_mask = sep.s
    if len(paths.paths) != popcount(s_mask):
        raise InvalidWitness("one path per separator vertex required")
    seen_ends = 0
    for path in paths.paths:
        end = path[-1]
        if not (s_mask >> end) & 1 or (seen_ends >> end) & 1:
            raise InvalidWitness("path endpoints must enumerate the separator")
        seen_ends |= 1 << end
        if not (x >> path[0]) & 1:
            raise InvalidWitness("each path must start in the removed flap")
        body = 0
        for v in path[:-1]:
            body |= 1 << v
        if body & keep & ~s_mask or body & s_mask:
            raise InvalidWitness("a path meets the kept side before its endpoint")

    # distances from the flap leaf, for nearest-node tie-breaking
    adj = base.node_neighbors()
    dist = [-1] * base.num_nodes
    dist[flap_leaf] = 0
    q = deque([flap_leaf])
    while q:
        cur = q.popleft()
        for nb in adj[cur]:
            if dist[nb] < 0:
                dist[nb] = dist[cur] + 1
                q.append(nb)

    new_bags = [bag & keep for bag in base.bags]
    for s in bits(s_mask):
        holders = [i for i, bag in enumerate(base.bags) if (bag >> s) & 1]
        if not holders:
            raise InvalidWitness(f"separator vertex {s} appears in no bag")
        t_s = min(holders, key=lambda i: (dist[i], i))
        for t in base.tree_path(flap_leaf, t_s):
            new_bags[t] |= 1 << s

    for old, new in zip(base.bags, new_bags):
        if popcount(new) > popcount(old):
            raise InvalidWitness("relabeled bag grew beyond its original size")
    if new_bags[flap_leaf] != s_mask:
        raise InvalidWitness("flap leaf bag did not reduce to the separator")

    d = TreeDecomposition(bags=tuple(new_bags), tree_edges=base.tree_edges)
    try:
        result = as_partial(d, p.k)
    except (BigInternalBag, NoSmallBag) as e:
        raise InvalidWitness(f"restriction is not a partial decomposition: {e}") from e
    if result.universe != keep:
        raise InvalidWitness("restricted bags do not cover the kept side")
    if g is not None:
        viol = verify_td(g, d, universe=keep)
        if viol is not None:
            raise InvalidWitness(f"restriction fails verification: {viol}")
    return result


def merge_flaps_lemma1(
    g: Graph,
    k: int,
    px: PartialDecomposition,
    x,
    py: PartialDecomposition,
    y,
) -> PartialDecomposition:
    """Merge two partial decompositions along non-touching flaps x and y.

    Separates x from y, restricts px to the far side and py to the near
    side, and glues the two separator leaves.  Every flap of the result is
    a subset of an input flap other than x and y (as vertex sets).
    """
    if px.k != k or py.k != k:
        raise InvalidWitness("threshold mismatch")
    if px.universe != g.full_mask or py.universe != g.full_mask:
        raise InvalidWitness("inputs must decompose all of G")

    def _check_flap(p, f):
        for cand in flaps(p):
            if cand.leaf == f.leaf and cand.vertices == f.vertices:
                return
        raise InvalidWitness(f"{bit_list(f.vertices)} is not a flap at node {f.leaf}")

    _check_flap(px, x)
    _check_flap(py, y)
    if touches(g, x.vertices, y.vertices):
        raise TouchingFlaps(f"{bit_list(x.vertices)} touches {bit_list(y.vertices)}")

    sep, paths_x = min_xy_separator(g, x.vertices, y.vertices)
    paths_y = disjoint_paths_to_separator(g, y.vertices, sep.s, sep.b)
    rx = restrict_to_side(px, sep, "b", x.leaf, paths_x, g=g)
    ry = restrict_to_side(py, sep, "a", y.leaf, paths_y, g=g)

    from .decomposition import glue

    merged = glue(rx, x.leaf, ry, y.leaf, g=g)

    allowed = {f.vertices for f in flaps(px)} - {x.vertices}
    allowed |= {f.vertices for f in flaps(py)} - {y.vertices}
    for f in flaps(merged):
        if not any(f.vertices & ~a == 0 for a in allowed):
            raise InvalidWitness(
                f"merged flap {bit_list(f.vertices)} is not contained in an "
                "input flap other than x and y"
            )
    return merged
