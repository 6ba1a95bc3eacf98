import random

import pytest

from twduality import (
    Graph,
    as_partial,
    bit_list,
    bits,
    components,
    disjoint_paths_to_separator,
    flaps,
    merge_flaps_lemma1,
    min_xy_separator,
    neighborhood,
    popcount,
    restrict_to_side,
    star_decomposition,
    touches,
    verify_td,
)
from twduality.errors import InvalidWitness, TouchingFlaps, TouchingInputs

from conftest import (
    brute_min_separator_size,
    mv,
    random_connected_graph,
    random_graph,
)


def check_separation(g, x, y, sep, paths):
    """Independent validation of the separator/paths contract."""
    assert sep.a | sep.b == g.full_mask
    assert sep.a & sep.b == sep.s
    assert neighborhood(g, sep.a & ~sep.s) & (sep.b & ~sep.s) == 0
    assert sep.s & (x | y) == 0
    for c in components(g, sep.s):
        assert not (c & x and c & y)
    assert popcount(sep.s) == len(paths.paths)
    assert popcount(sep.s) <= popcount(neighborhood(g, x))
    # brute minimality
    assert popcount(sep.s) == brute_min_separator_size(g, x, y)
    seen_outside_x = 0
    ends = 0
    for p in paths.paths:
        assert (x >> p[0]) & 1
        assert (sep.s >> p[-1]) & 1
        ends |= 1 << p[-1]
        for u, v in zip(p, p[1:]):
            assert (g.adj[u] >> v) & 1
        body = 0
        for v in p[1:]:
            body |= 1 << v
        # pairwise disjoint outside x
        assert body & seen_outside_x == 0
        seen_outside_x |= body
        # meets side b only in the separator endpoint
        assert body & sep.b == 1 << p[-1]
        assert body & ~sep.a == 0
    assert ends == sep.s


class TestMinXySeparator:
    def test_p5(self, p5):
        sep, paths = min_xy_separator(p5, mv(1), mv(5))
        assert (sep.s, sep.a, sep.b) == (mv(2), mv(1, 2), mv(2, 3, 4, 5))
        assert paths.paths == ((0, 1),)

    def test_c4(self, c4):
        sep, paths = min_xy_separator(c4, mv(1), mv(3))
        assert sep.s == mv(2, 4)
        assert paths.paths == ((0, 1), (0, 3))

    def test_disconnected(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        sep, paths = min_xy_separator(g, mv(1), mv(3))
        assert sep.s == 0 and paths.paths == ()
        assert sep.a == mv(1, 2) and sep.b == mv(3, 4)

    def test_touching_inputs(self, p3):
        with pytest.raises(TouchingInputs):
            min_xy_separator(p3, mv(1), mv(2))

    def test_menger_random(self):
        rng = random.Random(11)
        done = 0
        while done < 120:
            n = rng.randrange(4, 9)
            g = random_graph(rng, n, p=0.45)
            x = 1 << rng.randrange(n)
            rest = [v for v in range(n) if not (x | g.adj[(x).bit_length() - 1]) >> v & 1]
            if not rest:
                continue
            y = 1 << rng.choice(rest)
            if touches(g, x, y):
                continue
            sep, paths = min_xy_separator(g, x, y)
            check_separation(g, x, y, sep, paths)
            done += 1

    def test_set_inputs(self):
        rng = random.Random(12)
        done = 0
        while done < 60:
            n = rng.randrange(5, 9)
            g = random_graph(rng, n, p=0.35)
            x = rng.randrange(1, 1 << n) & rng.randrange(1, 1 << n)
            y = rng.randrange(1, 1 << n) & rng.randrange(1, 1 << n)
            if not x or not y or touches(g, x, y):
                continue
            sep, paths = min_xy_separator(g, x, y)
            check_separation(g, x, y, sep, paths)
            done += 1


class TestRestrictToSide:
    def test_p5_keep_b(self, p5):
        px = star_decomposition(p5, mv(2), 1)
        fx = [f for f in flaps(px) if f.vertices == mv(1)][0]
        sep, paths = min_xy_separator(p5, mv(1), mv(5))
        r = restrict_to_side(px, sep, "b", fx.leaf, paths, g=p5)
        assert r.base.bags == (mv(2), mv(2), mv(2, 3, 4, 5))
        assert [f.vertices for f in flaps(r)] == [mv(3, 4, 5)]

    def test_p5_keep_a(self, p5):
        py = star_decomposition(p5, mv(4), 1)
        fy = [f for f in flaps(py) if f.vertices == mv(5)][0]
        sep, _ = min_xy_separator(p5, mv(1), mv(5))
        paths_y = disjoint_paths_to_separator(p5, mv(5), sep.s, sep.b)
        r = restrict_to_side(py, sep, "a", fy.leaf, paths_y, g=p5)
        assert sorted(r.base.bags) == sorted((mv(2), mv(1, 2), mv(2)))
        assert [f.vertices for f in flaps(r)] == [mv(1)]

    def test_disconnected_side_keeps_bags(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
        p = star_decomposition(g, mv(2), 1)
        fx = [f for f in flaps(p) if f.vertices == mv(4, 5)][0]
        sep, paths = min_xy_separator(g, mv(4, 5), mv(3))
        # remove the {4,5} flap; keep the component of vertex 3
        r = restrict_to_side(p, sep, "b", fx.leaf, paths, g=g)
        assert r.universe == mv(1, 2, 3)
        assert r.base.bags[fx.leaf] == 0


class TestMergeFlapsLemma1:
    def test_p5_worked_example(self, p5):
        px = star_decomposition(p5, mv(2), 1)
        py = star_decomposition(p5, mv(4), 1)
        fx = [f for f in flaps(px) if f.vertices == mv(1)][0]
        fy = [f for f in flaps(py) if f.vertices == mv(5)][0]
        m = merge_flaps_lemma1(p5, 1, px, fx, py, fy)
        assert sorted(map(popcount, m.base.bags)) == [1, 1, 1, 2, 4]
        assert sorted(m.base.bags) == sorted((mv(2, 3, 4, 5), mv(2), mv(2), mv(2), mv(1, 2)))
        assert verify_td(p5, m.base) is None
        assert sorted(f.vertices for f in flaps(m)) == sorted([mv(1), mv(3, 4, 5)])

    def test_disconnected_components(self):
        # two triangles; stars from one vertex of each
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        pa = star_decomposition(g, mv(1), 2)
        pb = star_decomposition(g, mv(4), 2)
        fa = [f for f in flaps(pa) if f.vertices == mv(4, 5, 6)][0]
        fb = [f for f in flaps(pb) if f.vertices == mv(1, 2, 3)][0]
        m = merge_flaps_lemma1(g, 2, pa, fa, pb, fb)
        assert verify_td(g, m.base) is None
        got = {f.vertices for f in flaps(m)}
        assert got == {mv(2, 3), mv(5, 6)}

    def test_touching_flaps(self, c4):
        p = star_decomposition(c4, mv(1), 2)
        f = flaps(p)[0]
        with pytest.raises(TouchingFlaps):
            merge_flaps_lemma1(c4, 2, p, f, p, f)

    def test_not_a_flap_rejected(self, c4):
        from twduality import Flap

        p = star_decomposition(c4, mv(1, 3), 2)
        fake = Flap(vertices=mv(2), leaf=0, anchor=0)
        with pytest.raises(InvalidWitness):
            merge_flaps_lemma1(c4, 2, p, fake, p, fake)

    def test_merge_postconditions_random(self):
        rng = random.Random(13)
        done = 0
        while done < 80:
            n = rng.randrange(5, 10)
            g = random_connected_graph(rng, n)
            k = rng.choice([1, 2, 3])
            s1 = 0
            for _ in range(rng.randrange(0, k + 1)):
                s1 |= 1 << rng.randrange(n)
            s2 = 0
            for _ in range(rng.randrange(0, k + 1)):
                s2 |= 1 << rng.randrange(n)
            if popcount(s1) > k or popcount(s2) > k:
                continue
            px = star_decomposition(g, s1, k)
            py = star_decomposition(g, s2, k)
            pair = None
            for fx in flaps(px):
                for fy in flaps(py):
                    if not touches(g, fx.vertices, fy.vertices):
                        pair = (fx, fy)
                        break
                if pair:
                    break
            if pair is None:
                continue
            m = merge_flaps_lemma1(g, k, px, pair[0], py, pair[1])
            assert verify_td(g, m.base) is None
            as_partial(m.base, k)
            allowed = {f.vertices for f in flaps(px)} - {pair[0].vertices}
            allowed |= {f.vertices for f in flaps(py)} - {pair[1].vertices}
            for f in flaps(m):
                assert any(f.vertices & ~a == 0 for a in allowed), (
                    bit_list(f.vertices)
                )
            done += 1
