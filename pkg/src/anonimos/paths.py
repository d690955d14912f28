"""Canonical Dijkstra with an optional record of every comparison it makes.

Ties are broken deterministically: the frontier is ordered by
``(distance, vertex id)`` and a relaxation only replaces a tentative
distance on strict improvement.  With ``capture_trace`` the run records

* one ``extract`` decision per settled vertex (other than the source): the
  winner's tree path against the current best path of every vertex still
  on the frontier, and
* one ``relax`` decision per edge scanned into an unsettled, already
  discovered vertex: the path that won against the path that lost.

Replaying all of these comparisons reproduces the run step for step, which
is what makes the trace usable as an LP constraint system.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .graph import WeightedGraph

Path = Tuple[int, ...]


@dataclass(frozen=True)
class TraceDecision:
    kind: str  # "extract" or "relax"
    winner: int
    winner_path: Path
    losers: Tuple[Tuple[int, Path], ...]


@dataclass(frozen=True)
class ShortestPathTree:
    source: int
    dist: Tuple[float, ...]
    parent_edge: Tuple[Optional[int], ...]
    parent: Tuple[Optional[int], ...]
    settle_order: Tuple[int, ...]
    trace: Optional[Tuple[TraceDecision, ...]] = None

    @property
    def vertex_count(self) -> int:
        return len(self.dist)

    def reachable(self, v: int) -> bool:
        return math.isfinite(self.dist[v])


def _walk(parent_edge: Sequence[Optional[int]], parent: Sequence[Optional[int]], v: int) -> Path:
    path: List[int] = []
    while parent_edge[v] is not None:
        path.append(parent_edge[v])
        v = parent[v]
    path.reverse()
    return tuple(path)


def sssp_canonical(graph: WeightedGraph, source: int, capture_trace: bool = False) -> ShortestPathTree:
    n = graph.vertex_count
    if not 0 <= source < n:
        raise ValueError(f"source {source} out of range for {n} vertices")
    weights = graph.weights
    adjacency = graph.adjacency

    dist = [math.inf] * n
    parent_edge: List[Optional[int]] = [None] * n
    parent: List[Optional[int]] = [None] * n
    settled = [False] * n
    order: List[int] = []
    trace: List[TraceDecision] = []
    frontier: set = set()

    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if settled[u] or d != dist[u]:
            continue
        settled[u] = True
        order.append(u)
        frontier.discard(u)
        if capture_trace and u != source:
            losers = tuple((v, _walk(parent_edge, parent, v)) for v in sorted(frontier))
            trace.append(TraceDecision("extract", u, _walk(parent_edge, parent, u), losers))

        u_path = _walk(parent_edge, parent, u) if capture_trace else ()
        for v, e in adjacency[u]:
            if settled[v]:
                continue
            candidate = d + weights[e]
            if candidate < dist[v]:
                if capture_trace and v in frontier:
                    old = _walk(parent_edge, parent, v)
                    trace.append(TraceDecision("relax", v, u_path + (e,), ((v, old),)))
                dist[v] = candidate
                parent_edge[v] = e
                parent[v] = u
                frontier.add(v)
                heapq.heappush(heap, (candidate, v))
            elif capture_trace:
                current = _walk(parent_edge, parent, v)
                trace.append(TraceDecision("relax", v, current, ((v, u_path + (e,)),)))

    return ShortestPathTree(
        source=source,
        dist=tuple(dist),
        parent_edge=tuple(parent_edge),
        parent=tuple(parent),
        settle_order=tuple(order),
        trace=tuple(trace) if capture_trace else None,
    )


def apsp_canonical(
    graph: WeightedGraph, sources: Optional[Iterable[int]] = None, capture_trace: bool = False
) -> List[ShortestPathTree]:
    """One canonical tree per source, in the given order (duplicates allowed)."""
    if sources is None:
        sources = range(graph.vertex_count)
    sources = list(sources)
    for s in sources:
        if not 0 <= s < graph.vertex_count:
            raise ValueError(f"source {s} out of range for {graph.vertex_count} vertices")
    return [sssp_canonical(graph, s, capture_trace) for s in sources]


def trees_equal(a: ShortestPathTree, b: ShortestPathTree) -> bool:
    """Same parent edges and same reachable set.  Distances are ignored on purpose."""
    if a.source != b.source or a.vertex_count != b.vertex_count:
        raise ValueError("trees differ in source or vertex count")
    if a.parent_edge != b.parent_edge:
        return False
    return all(a.reachable(v) == b.reachable(v) for v in range(a.vertex_count))


def path_to(tree: ShortestPathTree, target: int) -> Optional[Path]:
    """Edge indices from the source to ``target``, or ``None`` if unreachable."""
    if not 0 <= target < tree.vertex_count:
        raise ValueError(f"target {target} out of range")
    if not tree.reachable(target):
        return None
    return _walk(tree.parent_edge, tree.parent, target)


def path_cost(graph: WeightedGraph, path: Iterable[int]) -> float:
    total = 0.0
    for e in path:
        total += graph.edges[e].w
    return total
