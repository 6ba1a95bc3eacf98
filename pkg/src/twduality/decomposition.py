"""Tree-decompositions and partial (<k)-decompositions.

A tree-decomposition must satisfy the three bag axioms: vertex coverage,
edge coverage, and connectivity of each vertex's bag set.  A partial
(<k)-decomposition additionally has no big internal bag (size > k) and at
least one small bag; each big leaf bag minus its small neighbor bag is a
k-flap, the unfinished region of the decomposition.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BagMismatch,
    BigIdentifiedInternal,
    BigInternalBag,
    FormatError,
    NoSmallBag,
    NotAFlap,
    NotATree,
    OverlapViolation,
    SeparatorTooBig,
)
from .graph import Graph, bit_list, bits, components, is_connected_set, mask_of, neighborhood, popcount


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree of bags.  bags[i] is the vertex mask of node i; tree_edges are
    the N-1 node pairs of the tree."""

    bags: tuple
    tree_edges: tuple

    def __post_init__(self):
        n = len(self.bags)
        if n < 1:
            raise NotATree("a decomposition needs at least one node")
        if len(self.tree_edges) != n - 1:
            raise NotATree(f"{len(self.tree_edges)} edges for {n} nodes")
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in self.tree_edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise NotATree(f"bad tree edge ({a}, {b})")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise NotATree(f"tree edge ({a}, {b}) closes a cycle")
            parent[ra] = rb

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    def node_neighbors(self) -> list[list[int]]:
        adj = [[] for _ in range(self.num_nodes)]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        for lst in adj:
            lst.sort()
        return adj

    def tree_path(self, a: int, b: int) -> list[int]:
        """Unique node path from a to b."""
        if a == b:
            return [a]
        adj = self.node_neighbors()
        prev = {a: None}
        queue = [a]
        while queue:
            cur = queue.pop(0)
            if cur == b:
                break
            for nb in adj[cur]:
                if nb not in prev:
                    prev[nb] = cur
                    queue.append(nb)
        path = [b]
        while path[-1] != a:
            path.append(prev[path[-1]])
        path.reverse()
        return path

    def vertex_union(self) -> int:
        u = 0
        for b in self.bags:
            u |= b
        return u


@dataclass(frozen=True)
class Violation:
    """A failed decomposition check: which axiom and a witness."""

    kind: str  # 'axiom_i' | 'axiom_ii' | 'axiom_iii'
    witness: object

    def __str__(self):
        return f"{self.kind}: witness {self.witness}"


def width(d: TreeDecomposition) -> int:
    """Max bag size minus one (-1 for a single empty bag)."""
    return max(popcount(b) for b in d.bags) - 1


def verify_td(g: Graph, d: TreeDecomposition, universe: int | None = None):
    """Check the three axioms of d against g (or against G[universe]).

    Returns None when valid, otherwise a Violation for the first failing
    axiom.
    """
    if universe is None:
        universe = g.full_mask
    union = d.vertex_union()
    if union != universe:
        diff = (universe & ~union) | (union & ~universe)
        v = (diff & -diff).bit_length() - 1
        return Violation("axiom_i", v)
    adj = d.node_neighbors()
    for v in bits(universe):
        nodes = [i for i, b in enumerate(d.bags) if (b >> v) & 1]
        seen = {nodes[0]}
        stack = [nodes[0]]
        node_set = set(nodes)
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb in node_set and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(nodes):
            return Violation("axiom_iii", v)
    for u, v in g.edges:
        if not (universe >> u) & 1 or not (universe >> v) & 1:
            continue
        pair = (1 << u) | (1 << v)
        if not any(b & pair == pair for b in d.bags):
            return Violation("axiom_ii", (u, v))
    return None


# ---------------------------------------------------------------------------
# partial (<k)-decompositions

@dataclass(frozen=True)
class PartialDecomposition:
    """A tree-decomposition viewed at threshold k over a vertex region.

    universe is the vertex set being decomposed (all of V for complete
    inputs; a side of a separation after restriction).
    """

    base: TreeDecomposition
    k: int
    universe: int

    def is_small(self, node: int) -> bool:
        return popcount(self.base.bags[node]) <= self.k


@dataclass(frozen=True)
class Flap:
    """A k-flap: big leaf bag minus its small neighbor bag."""

    vertices: int
    leaf: int
    anchor: int


def as_partial(d: TreeDecomposition, k: int) -> PartialDecomposition:
    """Wrap d as a partial (<k)-decomposition, checking its invariants."""
    if k < 0:
        raise ValueError("k must be >= 0")
    adj = d.node_neighbors()
    any_small = False
    for i, bag in enumerate(d.bags):
        big = popcount(bag) > k
        if not big:
            any_small = True
        elif len(adj[i]) >= 2:
            raise BigInternalBag(f"internal node {i} has a big bag")
    if not any_small:
        raise NoSmallBag("no bag of size <= k")
    for i, bag in enumerate(d.bags):
        if popcount(bag) > k and adj[i]:
            u = adj[i][0]
            if popcount(d.bags[u]) > k:
                # both endpoints of a 2-node tree big is excluded by the
                # small-bag check; a big leaf next to a big node would make
                # the neighbor internal and big, caught above -- defensive.
                raise BigInternalBag(f"big leaf {i} has big neighbor {u}")
    return PartialDecomposition(base=d, k=k, universe=d.vertex_union())


def flaps(p: PartialDecomposition) -> list[Flap]:
    """All k-flaps of p, one per big leaf, ordered by leaf node id."""
    adj = p.base.node_neighbors()
    out = []
    for t, bag in enumerate(p.base.bags):
        if popcount(bag) <= p.k or not adj[t]:
            continue
        if len(adj[t]) != 1:
            continue  # unreachable for a valid PartialDecomposition
        u = adj[t][0]
        vertices = bag & ~p.base.bags[u]
        out.append(Flap(vertices=vertices, leaf=t, anchor=u))
    return out


def star_decomposition(g: Graph, s: int, k: int) -> PartialDecomposition:
    """Center bag s; one leaf C u N(C) per component C of G - s."""
    g.check_mask(s)
    if popcount(s) > k:
        raise SeparatorTooBig(f"|s| = {popcount(s)} > k = {k}")
    comps = components(g, s)
    bags = [s]
    edges = []
    for i, c in enumerate(comps, start=1):
        bags.append(c | neighborhood(g, c))
        edges.append((0, i))
    d = TreeDecomposition(bags=tuple(bags), tree_edges=tuple(edges))
    return PartialDecomposition(base=d, k=k, universe=g.full_mask)


def realize_flap(g: Graph, x: int, k: int) -> PartialDecomposition:
    """A partial (<k)-decomposition exhibiting exactly x as a flap.

    Center bag is N(x) plus the smallest-id padding vertices outside
    x u N(x) needed to make the x-leaf big; the components inside x are
    merged into a single leaf with bag x u center.
    """
    from .duality import is_k_flap  # local import to avoid a cycle

    if not is_k_flap(g, x, k):
        raise NotAFlap(f"{bit_list(x)} is not a k-flap at k={k}")
    nx = neighborhood(g, x)
    closed = x | nx
    pad_needed = max(0, k + 1 - popcount(closed))
    pad = 0
    if pad_needed:
        free = g.full_mask & ~closed
        for v in bits(free):
            pad |= 1 << v
            pad_needed -= 1
            if pad_needed == 0:
                break
        if pad_needed:
            raise NotAFlap("not enough vertices to pad the leaf big")
    center = nx | pad
    bags = [center, x | center]
    edges = [(0, 1)]
    nxt = 2
    for c in components(g, center):
        if c & x:
            continue  # merged into the x-leaf
        bags.append(c | neighborhood(g, c))
        edges.append((0, nxt))
        nxt += 1
    d = TreeDecomposition(bags=tuple(bags), tree_edges=tuple(edges))
    return PartialDecomposition(base=d, k=k, universe=g.full_mask)


def glue(
    p1: PartialDecomposition,
    leaf1: int,
    p2: PartialDecomposition,
    leaf2: int,
    g: Graph | None = None,
) -> PartialDecomposition:
    """Identify leaf1 of p1 with leaf2 of p2 (equal bags required).

    The regions decomposed by p1 and p2 must intersect exactly in the
    common bag; when g is given, edges crossing between the two regions
    outside the common bag are rejected as well.
    """
    if p1.k != p2.k:
        raise BagMismatch(f"threshold mismatch: {p1.k} != {p2.k}")
    b1 = p1.base.bags[leaf1]
    b2 = p2.base.bags[leaf2]
    if b1 != b2:
        raise BagMismatch(f"bags differ: {bit_list(b1)} vs {bit_list(b2)}")
    common = b1
    if p1.universe & p2.universe != common:
        raise OverlapViolation(
            "regions overlap beyond the identified bag: "
            f"{bit_list(p1.universe & p2.universe)} != {bit_list(common)}"
        )
    if g is not None:
        side1 = p1.universe & ~common
        side2 = p2.universe & ~common
        if neighborhood(g, side1) & side2:
            raise OverlapViolation("an edge joins the two regions outside the common bag")

    n1 = p1.base.num_nodes
    remap = {}
    nxt = n1
    for i in range(p2.base.num_nodes):
        if i == leaf2:
            remap[i] = leaf1
        else:
            remap[i] = nxt
            nxt += 1
    bags = list(p1.base.bags)
    for i in range(p2.base.num_nodes):
        if i != leaf2:
            bags.append(p2.base.bags[i])
    edges = list(p1.base.tree_edges)
    for a, b in p2.base.tree_edges:
        edges.append((remap[a], remap[b]))
    d = TreeDecomposition(bags=tuple(bags), tree_edges=tuple(edges))

    adj = d.node_neighbors()
    if len(adj[leaf1]) >= 2 and popcount(common) > p1.k:
        raise BigIdentifiedInternal("identified node is big and internal")
    try:
        return as_partial(d, p1.k)
    except (BigInternalBag, NoSmallBag) as e:
        raise OverlapViolation(f"glued result is not a partial decomposition: {e}") from e


# ---------------------------------------------------------------------------
# PACE-2017 .td format

def parse_td(text) -> TreeDecomposition:
    """Parse PACE-2017 .td data (str or bytes)."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("ascii")
    header = None
    bag_lines = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate solution line")
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"line {lineno}: malformed solution line {line!r}")
            try:
                header = tuple(int(p) for p in parts[2:])
            except ValueError:
                raise FormatError(f"line {lineno}: malformed solution line {line!r}") from None
            continue
        if header is None:
            raise FormatError(f"line {lineno}: content before solution line")
        num_bags, _max_size, n = header
        if parts[0] == "b":
            if len(parts) < 2:
                raise FormatError(f"line {lineno}: malformed bag line {line!r}")
            try:
                bag_id = int(parts[1])
                verts = [int(p) for p in parts[2:]]
            except ValueError:
                raise FormatError(f"line {lineno}: malformed bag line {line!r}") from None
            if not (1 <= bag_id <= num_bags):
                raise FormatError(f"line {lineno}: bag id {bag_id} out of range")
            if bag_id in bag_lines:
                raise FormatError(f"line {lineno}: duplicate bag {bag_id}")
            if any(not (1 <= v <= n) for v in verts):
                raise FormatError(f"line {lineno}: vertex id out of range in bag {bag_id}")
            bag_lines[bag_id] = mask_of(v - 1 for v in verts)
        else:
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: malformed edge line {line!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise FormatError(f"line {lineno}: malformed edge line {line!r}") from None
            if not (1 <= a <= num_bags and 1 <= b <= num_bags):
                raise FormatError(f"line {lineno}: bag id out of range in edge {line!r}")
            edges.append((a - 1, b - 1))
    if header is None:
        raise FormatError("missing solution line")
    num_bags, _max_size, _n = header
    if set(bag_lines) != set(range(1, num_bags + 1)):
        missing = sorted(set(range(1, num_bags + 1)) - set(bag_lines))
        raise FormatError(f"missing bag lines for ids {missing}")
    bags = tuple(bag_lines[i] for i in range(1, num_bags + 1))
    return TreeDecomposition(bags=bags, tree_edges=tuple(sorted(edges)))


def write_td(d: TreeDecomposition, n: int | None = None) -> str:
    """Canonical .td text.  n defaults to the union of the bags."""
    if n is None:
        u = d.vertex_union()
        n = u.bit_length()
    max_size = max(popcount(b) for b in d.bags)
    lines = [f"s td {d.num_nodes} {max_size} {n}"]
    for i, bag in enumerate(d.bags, start=1):
        verts = " ".join(str(v + 1) for v in bits(bag))
        lines.append(f"b {i} {verts}".rstrip())
    for a, b in sorted(tuple(sorted(e)) for e in d.tree_edges):
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"
