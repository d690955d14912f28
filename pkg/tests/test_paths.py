import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anonimos.graph import WeightedGraph, parse_edge_list
from anonimos.paths import apsp_canonical, path_cost, path_to, sssp_canonical, trees_equal
from oracles import all_simple_path_distances
from support import TRIANGLE, er_graph

# triangle edges: e0 = 0-1 (1), e1 = 1-2 (1), e2 = 0-2 (3)


@pytest.fixture
def triangle():
    return parse_edge_list(TRIANGLE)


def test_triangle_from_zero(triangle):
    t = sssp_canonical(triangle, 0)
    assert t.dist == (0.0, 1.0, 2.0)
    assert t.parent_edge == (None, 0, 1)
    assert t.settle_order == (0, 1, 2)
    assert t.trace is None


def test_path_graph():
    t = sssp_canonical(parse_edge_list("0 1 2\n1 2 3"), 0)
    assert t.dist == (0.0, 2.0, 5.0)
    assert t.settle_order == (0, 1, 2)


def test_single_vertex():
    g = WeightedGraph(1, ())
    t = sssp_canonical(g, 0, capture_trace=True)
    assert t.dist == (0.0,)
    assert t.trace == ()


def test_source_out_of_range(triangle):
    with pytest.raises(ValueError):
        sssp_canonical(triangle, 3)
    with pytest.raises(ValueError):
        apsp_canonical(triangle, [0, 7])


def test_apsp_triangle(triangle):
    trees = apsp_canonical(triangle)
    assert [t.source for t in trees] == [0, 1, 2]
    # from 2, vertex 0 is reached through 1 (cost 2 < 3) over edge e0
    assert trees[2].parent_edge[0] == 0
    assert trees[2].parent[0] == 1
    assert apsp_canonical(triangle, []) == []
    a, b = apsp_canonical(triangle, [0, 0], capture_trace=True)
    assert a == b


def test_trees_equal(triangle):
    base = sssp_canonical(triangle, 0)
    assert trees_equal(base, base)
    assert trees_equal(base, sssp_canonical(triangle.with_weights([1, 1, 10]), 0))
    flipped = sssp_canonical(triangle.with_weights([5, 5, 3]), 0)
    assert flipped.parent_edge[2] == 2
    assert not trees_equal(base, flipped)
    with pytest.raises(ValueError):
        trees_equal(base, sssp_canonical(triangle, 1))


def test_path_to(triangle):
    t = sssp_canonical(triangle, 0)
    assert path_to(t, 2) == (0, 1)
    assert path_to(t, 0) == ()
    g = parse_edge_list("0 1 1\n2 3 1")
    assert path_to(sssp_canonical(g, 0), 3) is None
    with pytest.raises(ValueError):
        path_to(t, 3)


def test_ties_broken_canonically():
    # square, all weights 1: vertex 3 is reachable at cost 2 via 1 or via 2
    g = parse_edge_list("0 1 1\n1 3 1\n0 2 1\n2 3 1")
    t = sssp_canonical(g, 0)
    assert t.parent == (None, 0, 0, 1)
    assert t.parent_edge == (None, 0, 2, 1)
    assert t.settle_order == (0, 1, 2, 3)


def test_directed_reachability():
    g = parse_edge_list("0 1 1\n1 2 1\n2 0 1", directed=True)
    t = sssp_canonical(g, 1)
    assert t.dist == (2.0, 0.0, 1.0)
    assert path_to(t, 0) == (1, 2)


def test_triangle_trace(triangle):
    t = sssp_canonical(triangle, 0, capture_trace=True)
    kinds = [(d.kind, d.winner, d.winner_path, d.losers) for d in t.trace]
    assert kinds == [
        ("extract", 1, (0,), ((2, (2,)),)),
        ("relax", 2, (0, 1), ((2, (2,)),)),
        ("extract", 2, (0, 1), ()),
    ]


def _check_tree(g, t):
    assert t.dist[t.source] == 0.0
    keys = [(t.dist[v], v) for v in t.settle_order]
    assert keys == sorted(keys)
    for v in range(g.vertex_count):
        path = path_to(t, v)
        if path is None:
            assert math.isinf(t.dist[v]) and t.parent_edge[v] is None
            continue
        assert path_cost(g, path) == t.dist[v]
        assert len(set(path)) == len(path)
        if v != t.source:
            p, e = t.parent[v], t.parent_edge[v]
            assert t.dist[v] == t.dist[p] + g.edges[e].w
            assert {g.edges[e].u, g.edges[e].v} == {p, v}


def _check_trace(g, t):
    for d in t.trace:
        win = path_cost(g, d.winner_path)
        assert len(set(d.winner_path)) == len(d.winner_path)
        for _, loser_path in d.losers:
            assert len(set(loser_path)) == len(loser_path)
            assert win <= path_cost(g, loser_path)


@pytest.mark.parametrize("seed", range(40))
def test_tree_and_trace_invariants(seed):
    g = er_graph(seed, 6 + seed % 15, p=0.3, directed=seed % 3 == 0)
    for t in apsp_canonical(g, capture_trace=True):
        _check_tree(g, t)
        _check_trace(g, t)


@pytest.mark.parametrize("seed", range(30))
def test_distances_match_brute_force(seed):
    g = er_graph(1000 + seed, 4 + seed % 9, p=0.35, directed=seed % 2 == 1)
    for s in range(g.vertex_count):
        expected = all_simple_path_distances(g.vertex_count, g.edges, g.directed, s)
        got = sssp_canonical(g, s).dist
        for a, b in zip(got, expected):
            assert (math.isinf(a) and math.isinf(b)) or math.isclose(a, b, rel_tol=1e-9)


@given(st.integers(0, 10_000), st.integers(3, 15))
@settings(max_examples=50, deadline=None)
def test_deterministic(seed, n):
    g = er_graph(seed, n)
    a = sssp_canonical(g, 0, capture_trace=True)
    b = sssp_canonical(parse_edge_list_copy(g), 0, capture_trace=True)
    assert a == b


def parse_edge_list_copy(g):
    return WeightedGraph(g.vertex_count, tuple(g.edges), g.directed)
