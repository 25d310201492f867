import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from dsnkit.errors import DomainError, InputError, CapacityError
from dsnkit.graphs import (
    DirectedPath,
    UndirectedGraph,
    WeightedDigraph,
    all_simple_paths,
    diameter,
    elimination_width,
    reachable_set,
    reaches,
    shortest_path,
    strongly_connected_components,
    treewidth_exact,
    treewidth_upper_bound,
)


def digraphs(max_n=7, density=0.4):
    @st.composite
    def build(draw):
        n = draw(st.integers(2, max_n))
        arcs = {}
        for u in range(n):
            for v in range(n):
                if u != v and draw(st.booleans() if density >= 0.5 else st.sampled_from([True, False, False])):
                    arcs[(u, v)] = Fraction(draw(st.integers(1, 9)))
        return WeightedDigraph(range(n), arcs)

    return build()


class TestWeightedDigraph:
    def test_rejects_nonpositive_weight(self):
        with pytest.raises(InputError):
            WeightedDigraph({0, 1}, {(0, 1): 0})
        with pytest.raises(InputError):
            WeightedDigraph({0, 1}, {(0, 1): -2})

    def test_rejects_loop_and_unknown_endpoint(self):
        with pytest.raises(InputError):
            WeightedDigraph({0, 1}, {(0, 0): 1})
        with pytest.raises(InputError):
            WeightedDigraph({0, 1}, {(0, 2): 1})

    def test_adjacency_sorted(self):
        g = WeightedDigraph(range(4), {(0, 3): 1, (0, 1): 1, (0, 2): 1})
        assert g.out_neighbors(0) == (1, 2, 3)
        assert g.neighbors(0) == (1, 2, 3)

    def test_reverse_involution(self):
        g = WeightedDigraph(range(3), {(0, 1): 2, (1, 2): Fraction(1, 3)})
        assert g.reverse().reverse() == g

    def test_total_weight(self):
        g = WeightedDigraph(range(3), {(0, 1): Fraction(1, 2), (1, 2): Fraction(1, 2)})
        assert g.total_weight() == 1


class TestReachability:
    def test_forbidden_internal_blocks(self):
        g = WeightedDigraph(range(3), {(0, 1): 1, (1, 2): 1})
        assert reaches(g, 0, 2)
        assert not reaches(g, 0, 2, forbidden_internal={1})

    def test_endpoints_exempt(self):
        g = WeightedDigraph(range(3), {(0, 1): 1, (1, 2): 1})
        assert reaches(g, 0, 2, forbidden_internal={0, 2})

    def test_reachable_set(self):
        g = WeightedDigraph(range(4), {(0, 1): 1, (1, 2): 1, (3, 0): 1})
        assert reachable_set(g, 0) == {0, 1, 2}


class TestShortestPath:
    def test_lexicographic_tie_break(self):
        # two unit-cost routes 0->1->3 and 0->2->3; lexicographically smaller wins
        g = WeightedDigraph(range(4), {(0, 1): 1, (1, 3): 1, (0, 2): 1, (2, 3): 1})
        path, cost = shortest_path(g, 0, 3)
        assert cost == 2
        assert path.vertices == (0, 1, 3)

    def test_weights_beat_hops(self):
        g = WeightedDigraph(range(4), {(0, 3): 5, (0, 1): 1, (1, 2): 1, (2, 3): 1})
        path, cost = shortest_path(g, 0, 3)
        assert cost == 3 and path.length == 3

    @settings(max_examples=40, deadline=None)
    @given(digraphs())
    def test_matches_simple_path_minimum(self, g):
        """[DERIVED: brute-force all simple paths]"""
        for s in g.vertices:
            for t in g.vertices:
                if s == t:
                    continue
                paths = all_simple_paths(g, s, t)
                found = shortest_path(g, s, t)
                if not paths:
                    assert found is None
                    continue
                best = min(sum(g.weight(u, v) for u, v in p.arcs()) for p in paths)
                assert found is not None and found[1] == best


class TestPaths:
    def test_rejects_repeats(self):
        with pytest.raises(InputError):
            DirectedPath((0, 1, 0))

    def test_subpath_and_concat(self):
        p = DirectedPath((0, 1, 2, 3))
        assert p.subpath(1, 3).vertices == (1, 2, 3)
        q = DirectedPath((3, 4))
        assert p.concat(q).vertices == (0, 1, 2, 3, 4)


class TestScc:
    def test_known_components(self):
        g = WeightedDigraph(range(5), {(0, 1): 1, (1, 0): 1, (1, 2): 1, (2, 3): 1, (3, 2): 1})
        comps = strongly_connected_components(g)
        assert sorted(map(sorted, comps)) == [[0, 1], [2, 3], [4]]


class TestDiameter:
    def test_path_graph(self):
        u = UndirectedGraph(range(5), [(i, i + 1) for i in range(4)])
        assert diameter(u) == 4

    def test_disconnected_names_components(self):
        u = UndirectedGraph(range(4), [(0, 1), (2, 3)])
        with pytest.raises(DomainError) as err:
            diameter(u)
        assert "0" in str(err.value) and "2" in str(err.value)


class TestTreewidth:
    def test_tree_is_one(self):
        u = UndirectedGraph(range(5), [(0, 1), (0, 2), (2, 3), (2, 4)])
        assert treewidth_exact(u)[0] == 1

    def test_cycle_is_two(self):
        u = UndirectedGraph(range(6), [(i, (i + 1) % 6) for i in range(6)])
        assert treewidth_exact(u)[0] == 2

    def test_k4_is_three(self):
        u = UndirectedGraph(range(4), [(i, j) for i in range(4) for j in range(i + 1, 4)])
        assert treewidth_exact(u)[0] == 3

    def test_grid_4x4(self):
        """[DERIVED: compare to subset-DP on 16 vertices]"""
        edges = []
        for y in range(4):
            for x in range(4):
                v = y * 4 + x
                if x < 3:
                    edges.append((v, v + 1))
                if y < 3:
                    edges.append((v, v + 4))
        u = UndirectedGraph(range(16), edges)
        exact, order = treewidth_exact(u)
        assert exact == 4
        assert elimination_width(u, order) == 4
        assert 4 <= treewidth_upper_bound(u) <= 6

    def test_witness_order_matches_width(self):
        import random

        for seed in range(15):
            rng = random.Random(seed)
            n = rng.randint(3, 9)
            edges = [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < 0.45
            ]
            u = UndirectedGraph(range(n), edges)
            width, order = treewidth_exact(u)
            assert elimination_width(u, order) == width
            assert width <= treewidth_upper_bound(u)

    def test_capacity_cap(self):
        # 4-regular circulant: no simplicial or degree-2 reductions apply,
        # so the 30-vertex component exceeds the exact-DP cap
        n = 30
        edges = [(i, (i + 1) % n) for i in range(n)] + [(i, (i + 5) % n) for i in range(n)]
        with pytest.raises(CapacityError):
            treewidth_exact(UndirectedGraph(range(n), edges))
