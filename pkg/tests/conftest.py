"""Shared fixtures: named graphs, random generators, brute-force oracles."""
import itertools
import random

import pytest

from twduality import Graph, TreeDecomposition, bits, mask_of, popcount, verify_td


def mv(*verts_1based):
    """Mask from 1-based vertex ids (matches the ids used in file formats)."""
    return mask_of(v - 1 for v in verts_1based)


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def grid_graph(rows, cols):
    def vid(r, c):
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph.from_edges(rows * cols, edges)


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def p5():
    return path_graph(5)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def k4():
    return complete_graph(4)


def random_graph(rng, n, p=0.4):
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_connected_graph(rng, n, extra=None):
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    if extra is None:
        extra = rng.randrange(0, n)
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def all_graphs(n):
    """All labeled simple graphs on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for m in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if (m >> i) & 1])


def all_connected_graphs(n):
    from twduality import is_connected_set

    for g in all_graphs(n):
        if is_connected_set(g, g.full_mask):
            yield g


def subsets(mask):
    """All submasks of mask, ascending."""
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return sorted(out)


def brute_min_cover_size(g, elements):
    """Exhaustive minimum hitting-set size by increasing subset size."""
    elems = list(elements)
    if not elems:
        return 0
    verts = list(range(g.n))
    for size in range(0, g.n + 1):
        for combo in itertools.combinations(verts, size):
            cover = mask_of(combo)
            if all(cover & e for e in elems):
                return size
    raise AssertionError("unreachable")


def brute_min_separator_size(g, x, y):
    """Smallest |S| (S disjoint from x and y) leaving no component of G - S
    meeting both x and y."""
    from twduality import components

    candidates = [v for v in range(g.n) if not ((x | y) >> v) & 1]
    for size in range(0, len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            s = mask_of(combo)
            if not any(c & x and c & y for c in components(g, s)):
                return size
    raise AssertionError("unreachable")


def td_from_elimination(g, order):
    """Valid tree-decomposition from an elimination order (fill-in bags)."""
    adj = list(g.adj)
    remaining = g.full_mask
    bags = []
    parent_vertex = []
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        remaining &= ~(1 << v)
        nb = adj[v] & remaining
        bags.append((1 << v) | nb)
        parent_vertex.append(min(bits(nb), key=lambda u: pos[u]) if nb else None)
        for u in bits(nb):
            adj[u] |= nb & ~(1 << u)
    edges = []
    for i, pv in enumerate(parent_vertex):
        if pv is not None:
            edges.append((i, pos[pv]))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    d = TreeDecomposition(bags=tuple(bags), tree_edges=tuple(edges))
    assert verify_td(g, d) is None
    return d


def fixture_graphs():
    """The named corpus used across format and oracle tests."""
    return {
        "k1": complete_graph(1),
        "p3": path_graph(3),
        "p5": path_graph(5),
        "p7": path_graph(7),
        "c4": cycle_graph(4),
        "c6": cycle_graph(6),
        "k4": complete_graph(4),
        "k5": complete_graph(5),
        "grid3": grid_graph(3, 3),
        "petersen": petersen_graph(),
    }
