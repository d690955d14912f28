"""Linear inequality systems over edge-weight variables.

Every row reads ``sum(coeff[e] * x[e]) <= rhs`` with ``x[e]`` the new weight
of edge ``e``.  Rows are built with net integer coefficients (edges shared by
both sides of a comparison cancel), so two rows are duplicates exactly when
their ``(coeffs, rhs)`` pairs match.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .graph import WeightedGraph
from .paths import Path, ShortestPathTree, path_cost, path_to

TAGS = ("trace", "optimality", "order", "tie", "cost-lower", "cost-upper")


@dataclass(frozen=True)
class Provenance:
    tag: str
    source: int
    vertices: Tuple[int, ...] = ()

    def __str__(self) -> str:
        involved = ",".join(map(str, self.vertices))
        return f"{self.tag} source={self.source} vertices=[{involved}]"


@dataclass(frozen=True)
class ConstraintRow:
    coeffs: Tuple[Tuple[int, int], ...]
    rhs: float
    provenance: Optional[Provenance] = field(default=None, compare=False)

    @property
    def key(self) -> Tuple[Tuple[Tuple[int, int], ...], float]:
        return self.coeffs, self.rhs

    def lhs(self, point: Sequence[float]) -> float:
        return math.fsum(a * point[e] for e, a in self.coeffs)


@dataclass(frozen=True)
class Bounds:
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper bounds differ in length")

    @classmethod
    def uniform(cls, num_vars: int, lower: float, upper: float) -> "Bounds":
        return cls((float(lower),) * num_vars, (float(upper),) * num_vars)

    def __len__(self) -> int:
        return len(self.lower)

    def check(self) -> None:
        for lo, hi in zip(self.lower, self.upper):
            if not (0 < lo <= hi and math.isfinite(hi)):
                raise ValueError(f"invalid bounds [{lo}, {hi}]: need 0 < L <= U < inf")


@dataclass(frozen=True)
class ConstraintSet:
    rows: Tuple[ConstraintRow, ...]
    num_vars: int
    delta: Optional[float] = None  # None: rows do not depend on the margin (cost rows)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class LpModel:
    objective: Tuple[float, ...]
    rows: Tuple[ConstraintRow, ...]
    bounds: Bounds

    def __post_init__(self) -> None:
        if len(self.bounds) != len(self.objective):
            raise ValueError("objective and bounds differ in length")
        for i, row in enumerate(self.rows):
            for e, _ in row.coeffs:
                if not 0 <= e < len(self.objective):
                    raise ValueError(f"row {i} references variable {e} outside 0..{len(self.objective) - 1}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def matrices(self) -> Tuple[np.ndarray, np.ndarray]:
        """Dense ``(A, b)`` for ``A x <= b``."""
        A = np.zeros((len(self.rows), self.num_vars))
        for i, row in enumerate(self.rows):
            for e, a in row.coeffs:
                A[i, e] = a
        b = np.array([row.rhs for row in self.rows], dtype=float)
        return A, b


def difference_row(plus: Iterable[int], minus: Iterable[int], rhs: float, provenance: Provenance) -> ConstraintRow:
    """Row ``sum(x[plus]) - sum(x[minus]) <= rhs`` with shared edges cancelled."""
    net: Counter = Counter()
    for e in plus:
        net[e] += 1
    for e in minus:
        net[e] -= 1
    coeffs = tuple(sorted((e, a) for e, a in net.items() if a))
    return ConstraintRow(coeffs, float(rhs) + 0.0, provenance)  # no -0.0


def _strict_or_tie(
    graph: WeightedGraph, shorter: Path, longer: Path, delta: float, prov: Provenance, keep_ties: bool
) -> Iterable[ConstraintRow]:
    """``shorter <= longer - delta``, or ``shorter == longer`` when the two tie under the original weights."""
    if keep_ties and path_cost(graph, shorter) == path_cost(graph, longer):
        tie = Provenance("tie", prov.source, prov.vertices)
        return difference_row(shorter, longer, 0.0, tie), difference_row(longer, shorter, 0.0, tie)
    return (difference_row(shorter, longer, -delta, prov),)


def _implied(row: ConstraintRow, lower: Sequence[float], upper: Sequence[float]) -> bool:
    top = 0.0
    for e, a in row.coeffs:
        top += a * (upper[e] if a > 0 else lower[e])
    return top <= row.rhs


def _finish(rows: Iterable[ConstraintRow], num_vars: int, delta: Optional[float], bounds: Optional[Bounds]) -> ConstraintSet:
    if bounds is None:
        # only strict positivity is known: implied iff no positive coefficient and rhs >= 0
        lower, upper = (0.0,) * num_vars, (math.inf,) * num_vars
    else:
        lower, upper = bounds.lower, bounds.upper
    kept: List[ConstraintRow] = []
    seen = set()
    for row in rows:
        if row.key in seen or _implied(row, lower, upper):
            continue
        seen.add(row.key)
        kept.append(row)
    return ConstraintSet(tuple(kept), num_vars, delta)


def gen_trace_constraints(
    graph: WeightedGraph,
    tree: ShortestPathTree,
    delta: float,
    bounds: Optional[Bounds] = None,
    keep_ties: bool = False,
) -> ConstraintSet:
    """One row per recorded comparison: winner path at least ``delta`` cheaper than each loser path.

    With ``keep_ties``, comparisons that were exact ties under the original
    weights become equalities, so the vertex-id tie-break decides them again.
    """
    if tree.trace is None:
        raise ValueError("tree was computed without a decision trace")
    if delta < 0:
        raise ValueError("delta must be non-negative")

    def rows():
        for decision in tree.trace:
            for loser, loser_path in decision.losers:
                prov = Provenance("trace", tree.source, (decision.winner, loser))
                yield from _strict_or_tie(graph, decision.winner_path, loser_path, delta, prov, keep_ties)

    return _finish(rows(), graph.edge_count, float(delta), bounds)


def _directions(graph: WeightedGraph):
    for e, (u, v, _) in enumerate(graph.edges):
        yield e, u, v
        if not graph.directed:
            yield e, v, u


def gen_optimality_constraints(
    graph: WeightedGraph,
    tree: ShortestPathTree,
    delta: float,
    bounds: Optional[Bounds] = None,
    keep_ties: bool = False,
) -> ConstraintSet:
    """For each non-tree edge direction ``a -> b``: ``path(b) <= path(a) + x_ab - delta``.

    With ``keep_ties``, a non-tree edge that offered ``b`` an equally short
    path stays tight (equality), and ``b``'s parent must still be settled
    before ``a``: its distance stays smaller, or equal when it was equal.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    paths = [path_to(tree, v) for v in range(tree.vertex_count)]

    def rows():
        for e, a, b in _directions(graph):
            if tree.parent_edge[b] == e or tree.parent_edge[a] == e:
                continue
            if paths[a] is None or paths[b] is None:
                continue
            prov = Provenance("optimality", tree.source, (a, b))
            rows = _strict_or_tie(graph, paths[b], paths[a] + (e,), delta, prov, keep_ties)
            yield from rows
            if len(rows) == 2:
                p = tree.parent[b]
                yield from _strict_or_tie(graph, paths[p], paths[a], delta, Provenance("order", tree.source, (p, a)), True)

    return _finish(rows(), graph.edge_count, float(delta), bounds)


def gen_cost_constraints(
    graph: WeightedGraph,
    tree: ShortestPathTree,
    targets: Iterable[int],
    epsilon: float,
    bounds: Optional[Bounds] = None,
) -> ConstraintSet:
    """Pin each target's tree-path cost to ``[D - epsilon, D + epsilon]``."""
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")

    def rows():
        for t in targets:
            path = path_to(tree, t)
            if path is None:
                raise ValueError(f"target {t} is unreachable from source {tree.source}")
            d = tree.dist[t]
            yield difference_row(path, (), d + epsilon, Provenance("cost-upper", tree.source, (t,)))
            yield difference_row((), path, -(d - epsilon), Provenance("cost-lower", tree.source, (t,)))

    return _finish(rows(), graph.edge_count, None, bounds)


def compose(
    sets: Sequence[ConstraintSet], num_vars: Optional[int] = None, delta: Optional[float] = None
) -> ConstraintSet:
    """Union of row sets; the first occurrence of a duplicate row wins."""
    sizes = {s.num_vars for s in sets} | ({num_vars} if num_vars is not None else set())
    if len(sizes) > 1:
        raise ValueError(f"constraint sets disagree on num_vars: {sorted(sizes)}")
    margins = {s.delta for s in sets if s.delta is not None} | ({delta} if delta is not None else set())
    if len(margins) > 1:
        raise ValueError(f"constraint sets disagree on delta: {sorted(margins)}")
    if not sizes:
        raise ValueError("compose of no sets needs num_vars")
    out: List[ConstraintRow] = []
    seen = set()
    for s in sets:
        for row in s.rows:
            if row.key not in seen:
                seen.add(row.key)
                out.append(row)
    return ConstraintSet(tuple(out), sizes.pop(), margins.pop() if margins else None)


def prune_implied(constraints: ConstraintSet, bounds: Bounds) -> ConstraintSet:
    """Drop rows that every point of the box already satisfies."""
    if len(bounds) != constraints.num_vars:
        raise ValueError("bounds length does not match num_vars")
    rows = tuple(r for r in constraints.rows if not _implied(r, bounds.lower, bounds.upper))
    return ConstraintSet(rows, constraints.num_vars, constraints.delta)


def assemble_lp(constraints: ConstraintSet, bounds: Bounds, objective: Sequence[float]) -> LpModel:
    if len(objective) != constraints.num_vars:
        raise ValueError(f"objective has {len(objective)} entries, expected {constraints.num_vars}")
    if len(bounds) != constraints.num_vars:
        raise ValueError(f"bounds have {len(bounds)} entries, expected {constraints.num_vars}")
    bounds.check()
    return LpModel(tuple(float(c) for c in objective), constraints.rows, bounds)


def random_objective(num_vars: int, rng: np.random.Generator | int) -> Tuple[float, ...]:
    """Independent uniform draws on [-1, 1] from a numpy ``Generator`` (PCG64 when seeded with an int)."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return tuple(float(c) for c in rng.uniform(-1.0, 1.0, size=num_vars))


def violated_rows(constraints: ConstraintSet | LpModel, point: Sequence[float], tol: float = 1e-9) -> List[ConstraintRow]:
    return [r for r in constraints.rows if r.lhs(point) - r.rhs > tol * (1 + abs(r.rhs))]


def equality_rows(rows: Iterable[ConstraintRow]) -> List[Tuple[Tuple[int, int], ...]]:
    """Coefficient tuples ``a`` with both ``a.x <= 0`` and ``-a.x <= 0`` present (one per pair)."""
    keys = {r.key for r in rows}
    out = []
    for coeffs, rhs in sorted(keys):
        if rhs != 0.0 or not coeffs:
            continue
        negated = tuple((e, -a) for e, a in coeffs)
        if (negated, 0.0) in keys and coeffs < negated:
            out.append(coeffs)
    return out


def _integer_nullspace(
    equations: Sequence[Tuple[Tuple[int, int], ...]], num_vars: int
) -> List[Tuple[int, List[int]]]:
    """Integer basis of ``{x : a.x = 0 for every equation}`` as ``(free variable, vector)`` pairs.

    Each vector is zero on every other free variable."""
    pivots: List[Tuple[int, List[Fraction]]] = []  # (pivot column, reduced row)
    for eq in equations:
        row = [Fraction(0)] * num_vars
        for e, a in eq:
            row[e] = Fraction(a)
        for col, prow in pivots:
            if row[col]:
                f = row[col]
                row = [x - f * y for x, y in zip(row, prow)]
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            continue
        row = [x / row[lead] for x in row]
        for k, (col, prow) in enumerate(pivots):
            if prow[lead]:
                f = prow[lead]
                pivots[k] = (col, [x - f * y for x, y in zip(prow, row)])
        pivots.append((lead, row))
    pivot_cols = {col for col, _ in pivots}
    basis = []
    for f in range(num_vars):
        if f in pivot_cols:
            continue
        vec = [Fraction(0)] * num_vars
        vec[f] = Fraction(1)
        for col, prow in pivots:
            vec[col] = -prow[f]
        scale = math.lcm(*(x.denominator for x in vec))
        basis.append((f, [int(x * scale) for x in vec]))
    return basis


def snap_to_equalities(
    point: Sequence[float], equations: Sequence[Tuple[Tuple[int, int], ...]], magnitude: float
) -> Tuple[float, ...]:
    """Nearby point that satisfies every homogeneous equation bit-exactly in floating point.

    The result lies on a dyadic lattice inside the equations' solution
    space, with the grid step chosen so that any sum of coordinates up to
    ``magnitude`` is computed without rounding.  Each coordinate moves by
    a few multiples of that step (about ``1e-9`` for ``magnitude ~ 1e5``).
    """
    if not equations:
        return tuple(float(x) for x in point)
    n = len(point)
    basis = _integer_nullspace(equations, n)
    widest = max((max(abs(c) for c in v) for _, v in basis), default=1)
    bits = max(0, 50 - math.ceil(math.log2(magnitude * widest * (len(basis) + 1) + 1)))
    grid = 1 << bits
    x = [0] * n  # integer numerators over ``grid``
    for f, vec in basis:
        y = round(point[f] * grid / vec[f])
        for j, c in enumerate(vec):
            if c:
                x[j] += c * y
    return tuple(xi / grid for xi in x)
