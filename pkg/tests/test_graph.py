import random

import pytest

from jacstab.errors import InvalidGraphError, InvalidSubcurveError
from jacstab.graph import (
    DualGraph,
    Subcurve,
    VineCurve,
    complement,
    crossing_count,
    enumerate_vines,
    graph_from_json,
    graph_to_json,
    make_vine,
    spanning_tree_count,
    subcurves,
    validate,
)

from oracles import count_spanning_trees_exhaustive


def two_vertex(h1=1, h2=1, edges=1, marks1=(1,), marks2=(), n=1):
    return DualGraph.build([(0, h1, marks1), (1, h2, marks2)],
                           [(0, 1)] * edges, n)


def triangle():
    return DualGraph.build([(0, 1, (1,)), (1, 1, ()), (2, 1, ())],
                           [(0, 1), (1, 2), (0, 2)], 1)


class TestValidate:
    def test_valid_two_vertex(self):
        g = two_vertex()
        assert g.g == 2
        assert validate(g) == []

    def test_unstable_genus_zero_vertex(self):
        g = two_vertex(h1=0, h2=2)  # 2*0 - 2 + 1 + 1 = 0
        assert any("instability" in d for d in validate(g))

    def test_marking_assigned_twice(self):
        g = two_vertex(marks1=(1,), marks2=(1,))
        assert any("marking partition" in d for d in validate(g))

    def test_disconnected(self):
        g = DualGraph(
            [(0, 1, (1,)), (1, 2, ())], [], 1, g=3)
        diags = validate(g)
        assert any("not connected" in d for d in diags)
        assert any("genus formula" in d for d in diags)


class TestCrossingCount:
    def test_vine_three_edges(self):
        g = make_vine(1, 1, 3, (1,), 1).to_graph()
        assert crossing_count(g, Subcurve(frozenset({0}))) == 3

    def test_triangle_single_vertex(self):
        assert crossing_count(triangle(), Subcurve(frozenset({0}))) == 2

    def test_loop_is_internal(self):
        g = DualGraph.build([(0, 1, (1,)), (1, 1, ())],
                            [(0, 0), (0, 1)], 1)
        assert crossing_count(g, Subcurve(frozenset({0}))) == 1

    def test_symmetric_under_complement(self):
        g = triangle()
        for c0 in subcurves(g):
            assert crossing_count(g, c0) == crossing_count(g, complement(g, c0))

    def test_improper_subcurve_rejected(self):
        g = triangle()
        with pytest.raises(InvalidSubcurveError):
            crossing_count(g, Subcurve(frozenset()))
        with pytest.raises(InvalidSubcurveError):
            crossing_count(g, Subcurve(frozenset({0, 1, 2})))


class TestSubcurves:
    def test_counts(self):
        assert len(list(subcurves(two_vertex()))) == 2
        assert len(list(subcurves(triangle()))) == 6

    def test_single_vertex_has_none(self):
        g = DualGraph.build([(0, 1, (1,))], [], 1)
        assert list(subcurves(g)) == []

    def test_deterministic_order(self):
        g = triangle()
        assert [sorted(c.vertex_set) for c in subcurves(g)] == [
            [0], [1], [2], [0, 1], [0, 2], [1, 2]]


class TestEnumerateVines:
    def test_genus_two_membership(self):
        vines = enumerate_vines(2, 1, 2)
        assert make_vine(0, 1, 2, (1,), 1) in vines

    def test_unstable_side_excluded(self):
        # genus-0 unmarked side with e = 2 fails 2*0 - 2 + 2 + 0 > 0
        for v in enumerate_vines(2, 1, 2):
            assert 2 * v.g1 - 2 + v.e + len(v.S) > 0
            assert 2 * v.g2 - 2 + v.e + (v.n - len(v.S)) > 0

    def test_edge_bound(self):
        for g in (1, 2, 3):
            for n in (1, 2):
                assert all(v.e <= g + 1 for v in enumerate_vines(g, n, 1))

    def test_no_side_swap_duplicates(self):
        vines = enumerate_vines(3, 2, 1)
        assert len(vines) == len(set(vines))
        for v in vines:
            # swapping sides and re-canonicalizing lands on the same entry
            assert make_vine(v.g2, v.g1, v.e, v.side2_markings, v.n) == v

    def test_canonical_orientation(self):
        for v in enumerate_vines(3, 2, 1):
            assert (v.g1, v.S) <= (v.g2, v.side2_markings)

    def test_genus_formula(self):
        for v in enumerate_vines(3, 3, 1):
            assert v.g1 + v.g2 + v.e - 1 == 3
            assert validate(v.to_graph()) == []


class TestSpanningTreeCount:
    @pytest.mark.parametrize("e", [1, 2, 3, 5])
    def test_vine_parallel_edges(self, e):
        g = make_vine(1, 1, e, (1,), 1).to_graph()
        assert spanning_tree_count(g) == e

    def test_triangle(self):
        assert spanning_tree_count(triangle()) == 3

    def test_single_vertex_with_loops(self):
        g = DualGraph.build([(0, 1, (1,))], [(0, 0), (0, 0)], 1)
        assert spanning_tree_count(g) == 1

    def test_disconnected_rejected(self):
        g = DualGraph([(0, 1, (1,)), (1, 2, ())], [], 1, g=3)
        with pytest.raises(InvalidGraphError):
            spanning_tree_count(g)

    def test_against_exhaustive_enumeration(self):
        # all corpus graphs with <= 5 vertices / <= 8 edges, plus random ones
        from jacstab.corpus import random_stable_graph, stable_graph_corpus

        for graph in stable_graph_corpus(max_vertices=4, max_edges=7):
            assert spanning_tree_count(graph) == \
                count_spanning_trees_exhaustive(graph)
        rng = random.Random(7)
        for _ in range(50):
            graph = random_stable_graph(rng)
            if len(graph.edges) <= 8:
                assert spanning_tree_count(graph) == \
                    count_spanning_trees_exhaustive(graph)


def test_dualizing_degree_identity():
    # sum of (2h_v - 2 + val v) over vertices equals 2g - 2
    from jacstab.corpus import stable_graph_corpus

    for graph in stable_graph_corpus(max_vertices=3, max_edges=5):
        total = sum(2 * v.h - 2 + graph.valence(v.id) for v in graph.vertices)
        assert total == 2 * graph.g - 2


def test_json_round_trip():
    g = make_vine(0, 1, 2, (1,), 2).to_graph()
    text = graph_to_json(g)
    back = graph_from_json(text)
    assert back.signature == g.signature
    assert graph_to_json(back) == text


def test_json_field_order_deterministic():
    g = triangle()
    assert graph_to_json(g).index('"genus"') < graph_to_json(g).index('"vertices"')
