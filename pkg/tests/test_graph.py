import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddstab.errors import InvalidParameterError
from oddstab.graph import (
    Graph,
    blocks,
    connected_components,
    induced_subgraph,
    is_2_connected,
    is_bipartite,
)
from oddstab.construct import extremal_suspension, turan
from oddstab.cycles import shortest_odd_cycle


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def random_graph(rng, n, p):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


class TestGraphBasics:
    def test_rejects_self_loop(self):
        with pytest.raises(InvalidParameterError):
            Graph.from_edges(3, [(0, 0)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(InvalidParameterError):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            Graph.from_edges(2, [(0, 2)])

    @given(graphs())
    @settings(max_examples=150, deadline=None)
    def test_degree_sum_is_twice_edges(self, g):
        assert sum(g.degree(v) for v in g.vertices()) == 2 * g.m

    @given(graphs())
    @settings(max_examples=100, deadline=None)
    def test_edges_sorted_and_symmetric(self, g):
        es = list(g.edges())
        assert es == sorted(es)
        for u, v in es:
            assert u < v and g.has_edge(v, u)


class TestBipartite:
    def test_even_cycle_parts(self):
        bp = is_bipartite(cycle_graph(6))
        assert bp is not None
        assert bp.parts[0] == frozenset({0, 2, 4})
        assert bp.parts[1] == frozenset({1, 3, 5})

    def test_odd_cycle_none(self):
        assert is_bipartite(cycle_graph(5)) is None

    def test_restricted_to_bipartite_block(self):
        g = extremal_suspension(8, 3)  # K_{3,3} sharing a vertex with K_3
        tblock = next(b for b in blocks(g).blocks if len(b) == 6)
        bp = is_bipartite(g, tblock)
        assert bp is not None and sorted(map(len, bp.parts)) == [3, 3]

    def test_empty_restriction(self):
        bp = is_bipartite(cycle_graph(5), [])
        assert bp is not None and bp.support == frozenset()

    def test_component_roots_get_part_zero(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        bp = is_bipartite(g)
        assert bp.part(0) == 0 and bp.part(2) == 0

    def test_agrees_with_odd_cycle_search_small_random(self):
        rng = random.Random(7)
        for _ in range(300):
            g = random_graph(rng, rng.randint(1, 9), rng.random())
            bip = is_bipartite(g)
            odd = shortest_odd_cycle(g)
            assert (bip is None) == (odd is not None)


class TestBlocks:
    def test_suspension_two_blocks(self):
        g = extremal_suspension(11, 3)  # bipartite block + triangle at one vertex
        dec = blocks(g)
        assert len(dec.blocks) == 2
        assert len(dec.cut_vertices) == 1
        cut = next(iter(dec.cut_vertices))
        assert all(cut in b for b in dec.blocks)

    def test_path_blocks(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        dec = blocks(g)
        assert len(dec.blocks) == 3
        assert dec.cut_vertices == frozenset({1, 2})

    def test_cycle_single_block(self):
        dec = blocks(cycle_graph(5))
        assert len(dec.blocks) == 1 and not dec.cut_vertices

    def test_isolated_vertex_is_singleton_block(self):
        g = Graph.from_edges(3, [(0, 1)])
        dec = blocks(g)
        assert frozenset({2}) in dec.blocks

    def test_edge_partition_random_sweep(self):
        # every edge lies in exactly one block, under vertex deletion too
        rng = random.Random(13)
        for _ in range(1000):
            n = rng.randint(2, 64)
            g = random_graph(rng, n, rng.uniform(0.05, 0.5))
            for trial_g in (g,):
                dec = blocks(trial_g)
                seen = {}
                for i, b in enumerate(dec.blocks):
                    sub, vm = induced_subgraph(trial_g, b)
                    for u, v in sub.edges():
                        e = (vm.to_orig[u], vm.to_orig[v])
                        assert e not in seen
                        seen[e] = i
                assert len(seen) == trial_g.m
            v = rng.randrange(n)
            keep = [x for x in range(n) if x != v]
            sub, vm = induced_subgraph(g, keep)
            dec = blocks(sub)
            seen = set()
            for b in dec.blocks:
                s2, vm2 = induced_subgraph(sub, b)
                for u, w in s2.edges():
                    e = (vm2.to_orig[u], vm2.to_orig[w])
                    assert e not in seen
                    seen.add(e)
            assert len(seen) == sub.m

    def test_block_cut_tree_is_acyclic(self):
        rng = random.Random(5)
        for _ in range(60):
            g = random_graph(rng, rng.randint(2, 16), 0.25)
            dec = blocks(g)
            # bipartite incidence forest: #edges < #nodes per component
            nodes = len(dec.blocks) + len(dec.cut_vertices)
            assert len(dec.tree_edges) < max(nodes, 1) or nodes == 0
            for i, b in enumerate(dec.blocks):
                assert set(dec.cuts_in(i)) == set(b & dec.cut_vertices)


class TestTwoConnected:
    def test_complete_bipartite(self):
        assert is_2_connected(turan(6, 2))

    def test_two_triangles_sharing_vertex(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        assert not is_2_connected(g)

    def test_single_edge(self):
        assert not is_2_connected(Graph.from_edges(2, [(0, 1)]))

    def test_restricted(self):
        g = extremal_suspension(10, 3)
        tblock = next(b for b in blocks(g).blocks if len(b) == 8)
        assert is_2_connected(g, tblock)
        assert not is_2_connected(g)


class TestInduced:
    def test_k4_minus_vertex(self):
        sub, vm = induced_subgraph(turan(4, 4), [0, 1, 2])
        assert sub.n == 3 and sub.m == 3
        assert vm.to_orig == (0, 1, 2)

    def test_identity(self):
        g = turan(5, 2)
        sub, vm = induced_subgraph(g, range(5))
        assert sub == g and vm.to_sub == {v: v for v in range(5)}

    def test_alternating_vertices_of_c6(self):
        sub, _ = induced_subgraph(cycle_graph(6), [0, 2, 4])
        assert sub.n == 3 and sub.m == 0

    @given(graphs(), st.data())
    @settings(max_examples=80, deadline=None)
    def test_edge_set_is_intersection(self, g, data):
        keep = data.draw(st.sets(st.integers(0, g.n - 1)))
        sub, vm = induced_subgraph(g, keep)
        expected = {
            (min(u, v), max(u, v))
            for u in keep
            for v in keep
            if u < v and g.has_edge(u, v)
        }
        got = {(vm.to_orig[u], vm.to_orig[v]) for u, v in sub.edges()}
        assert got == expected


def test_components_ordered_by_min_label():
    g = Graph.from_edges(6, [(4, 5), (0, 1), (2, 3)])
    comps = connected_components(g)
    assert [min(c) for c in comps] == [0, 2, 4]
