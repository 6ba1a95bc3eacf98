import random

import pytest

from twduality import (
    Graph,
    TreeDecomposition,
    as_partial,
    flaps,
    glue,
    neighborhood,
    parse_td,
    realize_flap,
    star_decomposition,
    verify_td,
    width,
    write_td,
)
from twduality.decomposition import PartialDecomposition
from twduality.errors import (
    BagMismatch,
    BigInternalBag,
    FormatError,
    NoSmallBag,
    NotAFlap,
    NotATree,
    SeparatorTooBig,
)

from conftest import complete_graph, mv, path_graph, random_connected_graph


def td(bags, edges):
    return TreeDecomposition(bags=tuple(bags), tree_edges=tuple(edges))


class TestTreeStructure:
    def test_cycle_rejected(self):
        with pytest.raises(NotATree):
            td([1, 2, 4], [(0, 1), (1, 2), (2, 0)])

    def test_disconnected_rejected(self):
        with pytest.raises(NotATree):
            td([1, 2], [])

    def test_single_node_ok(self):
        assert td([mv(1)], []).num_nodes == 1


class TestVerifyTd:
    def test_p3_valid(self, p3):
        assert verify_td(p3, td([mv(1, 2), mv(2, 3)], [(0, 1)])) is None

    def test_axiom_ii_violation(self, p3):
        v = verify_td(p3, td([mv(1, 2), mv(3)], [(0, 1)]))
        assert v is not None and v.kind == "axiom_ii" and v.witness == (1, 2)

    def test_axiom_iii_violation(self, p3):
        v = verify_td(p3, td([mv(1, 2), mv(3), mv(1, 2)], [(0, 1), (1, 2)]))
        assert v is not None and v.kind == "axiom_iii" and v.witness == 0

    def test_axiom_i_violation(self, p3):
        v = verify_td(p3, td([mv(1, 2)], []))
        assert v is not None and v.kind == "axiom_i"


class TestWidth:
    def test_path_bags(self):
        assert width(td([mv(1, 2), mv(2, 3)], [(0, 1)])) == 1

    def test_single_big_bag(self):
        assert width(td([mv(1, 2, 3, 4)], [])) == 3

    def test_empty_bag_convention(self):
        assert width(td([0], [])) == -1


class TestAsPartial:
    def test_star_on_p3(self, p3):
        p = as_partial(td([mv(2), mv(1, 2), mv(2, 3)], [(0, 1), (0, 2)]), 1)
        assert p.is_small(0)

    def test_no_small_bag(self):
        with pytest.raises(NoSmallBag):
            as_partial(td([mv(1, 2, 3, 4)], []), 2)

    def test_big_leaves_small_middle(self):
        p = as_partial(td([mv(1, 2, 3), mv(2), mv(1, 2, 3)], [(0, 1), (1, 2)]), 2)
        assert p.k == 2

    def test_big_internal_rejected(self):
        with pytest.raises(BigInternalBag):
            as_partial(td([mv(1), mv(1, 2, 3), mv(3)], [(0, 1), (1, 2)]), 2)


class TestFlaps:
    def test_star_p5(self, p5):
        p = star_decomposition(p5, mv(2), 1)
        assert [f.vertices for f in flaps(p)] == [mv(1), mv(3, 4, 5)]

    def test_two_big_leaves(self, p3):
        p = as_partial(td([mv(1, 2), mv(2), mv(2, 3)], [(0, 1), (1, 2)]), 1)
        assert [f.vertices for f in flaps(p)] == [mv(1), mv(3)]

    def test_complete_decomposition_no_flaps(self, p3):
        p = as_partial(td([mv(1, 2), mv(2, 3)], [(0, 1)]), 2)
        assert flaps(p) == []

    def test_flap_invariants(self):
        rng = random.Random(3)
        for _ in range(40):
            g = random_connected_graph(rng, 7)
            s = rng.randrange(1 << 7) & rng.randrange(1 << 7)
            k = max(3, bin(s).count("1"))
            p = star_decomposition(g, s, k)
            for f in flaps(p):
                assert f.vertices
                bag_t = p.base.bags[f.leaf]
                assert neighborhood(g, f.vertices) & ~(bag_t & ~f.vertices) == 0
                assert f.vertices & p.base.bags[f.anchor] == 0


class TestStarDecomposition:
    def test_p5(self, p5):
        p = star_decomposition(p5, mv(2), 1)
        assert p.base.bags == (mv(2), mv(1, 2), mv(2, 3, 4, 5))

    def test_c4(self, c4):
        p = star_decomposition(c4, mv(1, 3), 2)
        assert p.base.bags == (mv(1, 3), mv(1, 2, 3), mv(1, 3, 4))

    def test_k4(self, k4):
        p = star_decomposition(k4, mv(1, 2, 3), 3)
        assert p.base.bags == (mv(1, 2, 3), mv(1, 2, 3, 4))

    def test_separator_too_big(self, p3):
        with pytest.raises(SeparatorTooBig):
            star_decomposition(p3, mv(1, 2), 1)

    def test_always_verifies(self):
        rng = random.Random(4)
        for _ in range(40):
            g = random_connected_graph(rng, 7)
            s = rng.randrange(1 << 7) & rng.randrange(1 << 7) & rng.randrange(1 << 7)
            p = star_decomposition(g, s, 7)
            assert verify_td(g, p.base) is None


class TestRealizeFlap:
    def test_p3_padding(self, p3):
        p = realize_flap(p3, mv(3), 2)
        assert p.base.bags[0] == mv(1, 2)
        assert mv(3) in [f.vertices for f in flaps(p)]

    def test_p5_no_padding(self, p5):
        p = realize_flap(p5, mv(3, 4, 5), 1)
        assert p.base.bags[0] == mv(2)
        assert mv(2, 3, 4, 5) in p.base.bags and mv(1, 2) in p.base.bags
        assert mv(3, 4, 5) in [f.vertices for f in flaps(p)]

    def test_not_a_flap(self, c4):
        with pytest.raises(NotAFlap):
            realize_flap(c4, mv(2), 1)


class TestGlue:
    def test_identity_like(self, p3):
        p1 = star_decomposition(p3, mv(2), 2)
        leaf1 = p1.base.bags.index(mv(1, 2))
        p2 = PartialDecomposition(
            base=td([mv(1, 2)], []), k=2, universe=mv(1, 2)
        )
        merged = glue(p1, leaf1, p2, 0, g=p3)
        assert merged.base.bags == p1.base.bags
        assert merged.base.tree_edges == p1.base.tree_edges

    def test_bag_mismatch(self):
        p1 = PartialDecomposition(base=td([mv(1, 2)], []), k=2, universe=mv(1, 2))
        p2 = PartialDecomposition(base=td([mv(2, 3)], []), k=2, universe=mv(2, 3))
        with pytest.raises(BagMismatch):
            glue(p1, 0, p2, 0)


class TestTdFormat:
    def test_parse_p3(self):
        d = parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
        assert d.bags == (mv(1, 2), mv(2, 3))
        assert d.tree_edges == ((0, 1),)

    def test_write_single_bag(self):
        assert write_td(td([mv(1, 2, 3, 4)], [])) == "s td 1 4 4\nb 1 1 2 3 4\n"

    def test_cyclic_rejected(self):
        with pytest.raises(NotATree):
            parse_td("s td 3 2 3\nb 1 1\nb 2 2\nb 3 3\n1 2\n2 3\n3 1\n")

    def test_missing_bag(self):
        with pytest.raises(FormatError):
            parse_td("s td 2 2 3\nb 1 1 2\n1 2\n")

    def test_bad_vertex_id(self):
        with pytest.raises(FormatError):
            parse_td("s td 1 2 2\nb 1 1 5\n")

    def test_roundtrip(self):
        rng = random.Random(5)
        from twduality import treewidth

        for _ in range(20):
            g = random_connected_graph(rng, 6)
            _, d = treewidth(g)
            text = write_td(d, n=g.n)
            assert write_td(parse_td(text), n=g.n) == text
