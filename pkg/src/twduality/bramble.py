"""Brambles: verification, exact minimum covers, covering-bag search, I/O.

A bramble is a family of connected, pairwise-touching vertex sets; its
order is the size of a minimum cover (a vertex set meeting every element).
find_covering_bag realizes the argument that any tree-decomposition has a
bag covering any bramble: either some adhesion already covers it, or every
tree edge can be oriented toward the side holding the elements that miss
its adhesion, and the bag at a sink of that orientation covers everything.
"""
from __future__ import annotations

from dataclasses import dataclass

from .decomposition import TreeDecomposition, Violation
from .errors import EmptyElement, FormatError, OrientationConflict, TooLarge
from .graph import Graph, bit_list, bits, is_connected_set, mask_of, touches


@dataclass(frozen=True)
class Bramble:
    """elements are vertex masks over a host graph of n vertices."""

    elements: tuple
    n: int
    claimed_order: int = 0


@dataclass(frozen=True)
class CoverWitness:
    """kind is 'bag' (location: node id) or 'adhesion' (location: tree edge)."""

    kind: str
    location: object
    cover: int


def verify_bramble(g: Graph, elements) -> Violation | None:
    """None iff every element is nonempty + connected and all pairs touch."""
    elems = list(elements)
    for i, e in enumerate(elems):
        g.check_mask(e)
        if not e:
            return Violation(kind="empty_element", witness=i)
        if not is_connected_set(g, e):
            return Violation(kind="disconnected_element", witness=i)
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if not touches(g, elems[i], elems[j]):
                return Violation(kind="pair_not_touching", witness=(i, j))
    return None


def _greedy_disjoint(elems) -> int:
    """Number of pairwise-disjoint elements picked greedily (cover lower bound)."""
    used = 0
    count = 0
    for e in elems:
        if not e & used:
            used |= e
            count += 1
    return count


def min_cover(g: Graph, b: Bramble, max_elements: int = 64, max_n: int = 32) -> int:
    """Minimum-cardinality vertex set meeting every element (exact).

    Iterative-deepening branch and bound: branch on the vertices of the
    first unhit element in ascending id order, pruned by the greedy
    disjoint-elements lower bound.  Deterministic smallest-id tie-break.
    """
    if len(b.elements) > max_elements:
        raise TooLarge(f"{len(b.elements)} elements exceeds bound {max_elements}")
    if g.n > max_n:
        raise TooLarge(f"n={g.n} exceeds bound {max_n}")
    # a vertex hitting an element hits all its supersets, so restricting to
    # inclusion-minimal elements changes nothing about minimum covers
    elems = [
        e
        for e in b.elements
        if not any(o != e and o & ~e == 0 for o in b.elements)
    ]
    seen = set()
    elems = [e for e in elems if not (e in seen or seen.add(e))]
    if not elems:
        return 0

    def search(remaining, chosen, budget):
        if not remaining:
            return chosen
        if _greedy_disjoint(remaining) > budget:
            return None
        for v in bits(remaining[0]):
            rest = [e for e in remaining[1:] if not (e >> v) & 1]
            got = search(rest, chosen | (1 << v), budget - 1)
            if got is not None:
                return got
        return None

    for size in range(_greedy_disjoint(elems), g.n + 1):
        got = search(elems, 0, size)
        if got is not None:
            return got
    raise AssertionError("unreachable: V itself covers any bramble")


def find_covering_bag(g: Graph, d: TreeDecomposition, b: Bramble) -> CoverWitness:
    """A bag or adhesion of d that meets every element of b.

    Adhesions are scanned first in sorted tree-edge order; otherwise each
    tree edge is oriented toward the side containing the elements disjoint
    from its adhesion, and the walk from node 0 along outgoing edges ends
    at a node whose bag covers b.
    """
    elems = list(b.elements)

    def covers(mask):
        return all(mask & e for e in elems)

    edges = sorted(tuple(sorted(e)) for e in d.tree_edges)
    for a, c in edges:
        adhesion = d.bags[a] & d.bags[c]
        if covers(adhesion):
            return CoverWitness(kind="adhesion", location=(a, c), cover=adhesion)

    adj = d.node_neighbors()

    def side_union(root, banned):
        # union of bags over the component of root in the tree minus one edge
        seen = {root}
        stack = [root]
        union = 0
        while stack:
            t = stack.pop()
            union |= d.bags[t]
            for nb in adj[t]:
                if nb != banned and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return union

    # orientation[(a, c)] means the edge a-c points from a to c
    outgoing = {a: [] for a in range(d.num_nodes)}
    for a, c in edges:
        adhesion = d.bags[a] & d.bags[c]
        va = side_union(a, c)
        vc = side_union(c, a)
        toward_a = toward_c = False
        for e in elems:
            if e & adhesion:
                continue
            in_a = e & ~(va & ~adhesion) == 0
            in_c = e & ~(vc & ~adhesion) == 0
            if in_a == in_c:
                raise OrientationConflict(
                    f"element {bit_list(e)} is not confined to one side of "
                    f"tree edge {a}-{c}"
                )
            if in_a:
                toward_a = True
            else:
                toward_c = True
        if toward_a and toward_c:
            raise OrientationConflict(
                f"elements missing the adhesion of {a}-{c} lie on both sides"
            )
        if toward_a:
            outgoing[c].append(a)
        else:
            outgoing[a].append(c)

    cur = 0
    visited = {0}
    while outgoing[cur]:
        nxt = min(outgoing[cur])
        if nxt in visited:
            break
        visited.add(nxt)
        cur = nxt
    bag = d.bags[cur]
    assert covers(bag), "sink bag must cover the bramble"
    return CoverWitness(kind="bag", location=cur, cover=bag)


# ---------------------------------------------------------------------------
# .br certificate format (invented companion to PACE .gr/.td):
#   c <comment>
#   s br <num_elements> <n> <claimed_order>
#   B <id> <v...>        (1-based vertex ids; one line per element)

def parse_br(text) -> Bramble:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("ascii")
    header = None
    lines_by_id = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("s"):
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate solution line")
            parts = line.split()
            if len(parts) != 5 or parts[1] != "br":
                raise FormatError(f"line {lineno}: invalid solution line {line!r}")
            try:
                header = tuple(int(p) for p in parts[2:])
            except ValueError:
                raise FormatError(f"line {lineno}: invalid solution line {line!r}") from None
            if any(v < 0 for v in header):
                raise FormatError(f"line {lineno}: negative counts in solution line")
            continue
        if not line.startswith("B"):
            raise FormatError(f"line {lineno}: unrecognized line {line!r}")
        if header is None:
            raise FormatError(f"line {lineno}: element line before solution line")
        num, n, _ = header
        parts = line.split()
        try:
            ident = int(parts[1])
            verts = [int(p) for p in parts[2:]]
        except (IndexError, ValueError):
            raise FormatError(f"line {lineno}: malformed element line {line!r}") from None
        if not (1 <= ident <= num):
            raise FormatError(f"line {lineno}: element id {ident} out of range")
        if ident in lines_by_id:
            raise FormatError(f"line {lineno}: duplicate element {ident}")
        if not verts:
            raise EmptyElement(f"line {lineno}: element {ident} is empty")
        for v in verts:
            if not (1 <= v <= n):
                raise FormatError(f"line {lineno}: vertex id {v} out of range")
        lines_by_id[ident] = mask_of(v - 1 for v in verts)
    if header is None:
        raise FormatError("missing solution line")
    num, n, claimed = header
    missing = [i for i in range(1, num + 1) if i not in lines_by_id]
    if missing:
        raise FormatError(f"missing element lines: {missing}")
    elements = tuple(lines_by_id[i] for i in range(1, num + 1))
    return Bramble(elements=elements, n=n, claimed_order=claimed)


def write_br(b: Bramble) -> str:
    """Canonical .br text: elements in stored order, sorted 1-based vertices."""
    lines = [f"s br {len(b.elements)} {b.n} {b.claimed_order}"]
    for i, e in enumerate(b.elements, start=1):
        verts = " ".join(str(v + 1) for v in bits(e))
        lines.append(f"B {i} {verts}")
    return "\n".join(lines) + "\n"
