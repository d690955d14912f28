"""Seeded graph generators shared by the test modules."""

from __future__ import annotations

import numpy as np

from anonimos.graph import Edge, WeightedGraph, write_edge_list

TRIANGLE = "0 1 1\n1 2 1\n0 2 3\n"


def er_graph(seed, n, p=0.3, max_weight=100, directed=False):
    """Erdos-Renyi graph with integer weights uniform in [1, max_weight].

    Vertex ids are relabelled densely so every vertex touches an edge; the
    graph always has at least one edge.
    """
    rng = np.random.default_rng(seed)
    while True:
        pairs = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and (directed or u < v) and rng.random() < p
        ]
        if pairs:
            break
    used = sorted({x for pair in pairs for x in pair})
    relabel = {old: new for new, old in enumerate(used)}
    edges = tuple(
        Edge(relabel[u], relabel[v], float(rng.integers(1, max_weight + 1))) for u, v in pairs
    )
    return WeightedGraph(len(used), edges, directed)


def write_tmp(tmp_path, name, graph_or_text):
    path = tmp_path / name
    text = graph_or_text if isinstance(graph_or_text, str) else write_edge_list(graph_or_text)
    path.write_text(text)
    return str(path)


def random_lp(rng):
    """Small LP ``(c, A, b, lower, upper)``: up to 6 variables, up to 8 rows, finite positive box."""
    n = int(rng.integers(1, 7))
    m = int(rng.integers(0, 9))
    c = rng.uniform(-1, 1, n)
    A = rng.integers(-3, 4, (m, n)).astype(float)
    lower = rng.uniform(0.1, 3, n).round(2)
    upper = lower + rng.uniform(0.5, 10, n).round(2)
    b = rng.uniform(-5, 15, m).round(2)
    return c, A, b, lower, upper
