"""Edge-weighted graphs and the plain-text edge-list format.

Vertices are dense integer ids ``0..n-1``.  Every edge carries a stable
index (its position in :attr:`WeightedGraph.edges`) which doubles as the id
of its LP variable, so undirected edges are stored once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, NamedTuple, Sequence, Tuple


class GraphFormatError(ValueError):
    """Raised when edge-list text cannot be turned into a valid graph."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Edge(NamedTuple):
    u: int
    v: int
    w: float


@dataclass(frozen=True)
class WeightedGraph:
    vertex_count: int
    edges: Tuple[Edge, ...]
    directed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(Edge(int(u), int(v), float(w)) for u, v, w in self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> Tuple[float, ...]:
        return tuple(e.w for e in self.edges)

    @cached_property
    def adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Outgoing ``(neighbor, edge index)`` pairs per vertex, in edge-index order."""
        out: List[List[Tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for idx, (u, v, _) in enumerate(self.edges):
            out[u].append((v, idx))
            if not self.directed:
                out[v].append((u, idx))
        return tuple(tuple(nbrs) for nbrs in out)

    def other_end(self, edge_index: int, vertex: int) -> int:
        u, v, _ = self.edges[edge_index]
        return v if vertex == u else u

    def with_weights(self, weights: Sequence[float]) -> "WeightedGraph":
        """Same topology, new weights (in edge-index order)."""
        if len(weights) != self.edge_count:
            raise ValueError(f"expected {self.edge_count} weights, got {len(weights)}")
        edges = tuple(Edge(e.u, e.v, float(w)) for e, w in zip(self.edges, weights))
        return WeightedGraph(self.vertex_count, edges, self.directed)

    def same_topology(self, other: "WeightedGraph") -> bool:
        return (
            self.vertex_count == other.vertex_count
            and self.directed == other.directed
            and [(e.u, e.v) for e in self.edges] == [(e.u, e.v) for e in other.edges]
        )


def validate(graph: WeightedGraph) -> List[str]:
    """Return every invariant violation; an empty list means the graph is valid."""
    problems: List[str] = []
    if graph.vertex_count < 0:
        problems.append(f"negative vertex count {graph.vertex_count}")
    seen: dict = {}
    for idx, (u, v, w) in enumerate(graph.edges):
        if not (math.isfinite(w) and w > 0):
            problems.append(f"non-positive weight, edge {idx}")
        if u == v:
            problems.append(f"self-loop, edge {idx} at vertex {u}")
        for end in (u, v):
            if end < 0 or end >= graph.vertex_count:
                problems.append(f"endpoint {end} out of range, edge {idx}")
        key = (u, v) if graph.directed else (min(u, v), max(u, v))
        if key in seen:
            problems.append(f"parallel edge, edge {idx} duplicates edge {seen[key]}")
        else:
            seen[key] = idx
    return problems


def _parse_vertex(token: str, lineno: int) -> int:
    if not token.isascii() or not token.isdigit():
        raise GraphFormatError(f"vertex id {token!r} is not a non-negative integer", lineno)
    return int(token)


def parse_edge_list(text: str | Iterable[str], directed: bool = False) -> WeightedGraph:
    """Parse ``u v w`` lines into a validated :class:`WeightedGraph`.

    ``#`` starts a comment, blank lines are skipped, and edges are indexed
    in file order.  Any malformed line, non-positive weight, self-loop or
    duplicate edge raises :class:`GraphFormatError` naming the line.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    edges: List[Edge] = []
    first_line: dict = {}
    max_vertex = -1
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"expected 'u v w', got {len(parts)} fields", lineno)
        u = _parse_vertex(parts[0], lineno)
        v = _parse_vertex(parts[1], lineno)
        try:
            w = float(parts[2])
        except ValueError:
            raise GraphFormatError(f"weight {parts[2]!r} is not a number", lineno) from None
        if not math.isfinite(w) or w <= 0:
            raise GraphFormatError(f"weight {parts[2]} is not positive", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop on vertex {u}", lineno)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in first_line:
            raise GraphFormatError(f"duplicate edge {u}-{v} (first seen on line {first_line[key]})", lineno)
        first_line[key] = lineno
        edges.append(Edge(u, v, w))
        max_vertex = max(max_vertex, u, v)
    if not edges:
        raise GraphFormatError("empty input: no edges")
    return WeightedGraph(max_vertex + 1, tuple(edges), directed)


def format_weight(w: float, precision: int = 17) -> str:
    """Shortest rendering of ``w`` that round-trips, capped at ``precision`` significant digits."""
    if not 1 <= precision <= 17:
        raise ValueError("precision must be in [1, 17]")
    for digits in range(1, precision + 1):
        text = f"{w:.{digits}g}"
        if float(text) == w:
            return text
    return f"{w:.{precision}g}"


def write_edge_list(graph: WeightedGraph, precision: int = 17) -> str:
    return "".join(f"{u} {v} {format_weight(w, precision)}\n" for u, v, w in graph.edges)


def read_graph(path: str, directed: bool = False) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), directed)


def write_graph(graph: WeightedGraph, path: str, precision: int = 17) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(write_edge_list(graph, precision))
