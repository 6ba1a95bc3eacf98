"""Simple undirected graphs and vertex-set primitives.

Vertices are dense 0-based ids internally; all file formats use 1-based ids
(PACE convention).  Vertex sets are plain int bitmasks: bit v set means
vertex v is in the set.  This keeps neighborhood / component / touching
queries down to a handful of word operations for the graph sizes this
library targets.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import FormatError


# ---------------------------------------------------------------------------
# bitmask helpers

def mask_of(vertices) -> int:
    """Bitmask of an iterable of 0-based vertex ids."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int):
    """Yield the 0-based vertex ids of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit (mask must be nonzero)."""
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    edges are stored as sorted 0-based pairs (u, v) with u < v; adj[v] is
    the neighbor bitmask of v.
    """

    n: int
    edges: tuple
    adj: tuple

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        dedup = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            dedup.add((min(u, v), max(u, v)))
        sorted_edges = tuple(sorted(dedup))
        adj = [0] * n
        for u, v in sorted_edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n=n, edges=sorted_edges, adj=tuple(adj))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adj_array(self) -> np.ndarray:
        """Adjacency masks as an int64 array (kernel input)."""
        return np.array(self.adj, dtype=np.int64)

    def check_mask(self, x: int) -> None:
        if x < 0 or x & ~self.full_mask:
            raise ValueError(f"vertex set {x:#x} has members outside 0..{self.n - 1}")


# ---------------------------------------------------------------------------
# set primitives

def neighborhood(g: Graph, x: int) -> int:
    """N(x): vertices outside x with a neighbor in x."""
    g.check_mask(x)
    r = 0
    for v in bits(x):
        r |= g.adj[v]
    return r & ~x


def components(g: Graph, s: int) -> list[int]:
    """Connected components of G - s, ordered by smallest member."""
    g.check_mask(s)
    region = g.full_mask & ~s
    out = []
    while region:
        comp = region & -region
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= region & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        region &= ~comp
    return out


def touches(g: Graph, x: int, y: int) -> bool:
    """True iff x and y meet or an edge joins them."""
    g.check_mask(x)
    g.check_mask(y)
    if x & y:
        return True
    return bool(neighborhood(g, x) & y)


def is_connected_set(g: Graph, x: int) -> bool:
    """True iff x is nonempty and G[x] is connected (empty set -> False)."""
    g.check_mask(x)
    if not x:
        return False
    comp = x & -x
    frontier = comp
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= x & ~comp
        comp |= nxt
        frontier = nxt
    return comp == x


# ---------------------------------------------------------------------------
# PACE-2017 .gr format

def parse_gr(text) -> Graph:
    """Parse PACE-2017 .gr data (str or bytes).

    Duplicate edge lines are tolerated with a warning; self-loops and
    out-of-range ids are rejected.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("ascii")
    n = None
    m_declared = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "tw":
                raise FormatError(f"line {lineno}: invalid problem line {line!r}")
            try:
                n, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: invalid problem line {line!r}") from None
            if n < 0 or m_declared < 0:
                raise FormatError(f"line {lineno}: negative counts in problem line")
            continue
        if n is None:
            raise FormatError(f"line {lineno}: edge before problem line")
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: malformed edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: malformed edge line {line!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"line {lineno}: vertex id out of range in {line!r}")
        if u == v:
            raise FormatError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            warnings.warn(f".gr line {lineno}: duplicate edge {u} {v} ignored")
            continue
        seen.add(key)
        edges.append((u - 1, v - 1))
    if n is None:
        raise FormatError("missing problem line")
    if m_declared != len(seen):
        warnings.warn(
            f".gr problem line declares {m_declared} edges, found {len(seen)} distinct"
        )
    return Graph.from_edges(n, edges)


def write_gr(g: Graph) -> str:
    """Canonical .gr text: sorted edge lines, 1-based ids."""
    lines = [f"p tw {g.n} {g.num_edges}"]
    for u, v in g.edges:
        lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"
