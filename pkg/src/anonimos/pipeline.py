"""End-to-end runs behind the command line: anonymize, export-lp, verify, metrics.

Each ``run_*`` function takes a :class:`RunConfig`, writes its files and
returns a process exit code:

==  =====================================================
0   success
1   input/output problem (missing file, malformed graph)
2   LP infeasible after the margin fallback, or no round verified
3   invalid configuration or topology mismatch
4   verification found a changed shortest-path tree
==  =====================================================
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .constraints import (
    Bounds,
    ConstraintSet,
    LpModel,
    assemble_lp,
    compose,
    equality_rows,
    gen_cost_constraints,
    gen_optimality_constraints,
    gen_trace_constraints,
    prune_implied,
    random_objective,
    snap_to_equalities,
    violated_rows,
)
from .graph import GraphFormatError, WeightedGraph, read_graph, write_graph
from .lpfile import export_lp_text
from .metrics import build_report, kendall_tau, preservation_rate
from .paths import ShortestPathTree, apsp_canonical
from .solver import LpStatus, SimplexIterationLimit, check_feasible, solve

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INFEASIBLE = 2
EXIT_CONFIG = 3
EXIT_CHANGED = 4

MIN_DELTA = 1e-6
# floor for the widened lower bound, as a fraction of the smallest weight
LOWER_FLOOR = 1e-3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    input: str
    output: Optional[str] = None
    anonymized: Optional[str] = None
    directed: bool = False
    mode: str = "sssp"  # sssp | apsp | subset
    source: int = 0
    sources: Tuple[int, ...] = ()
    constraints: str = "optimality"
    delta: float = 1.0
    lower: float = 1.0
    upper: float = 1000.0
    epsilon: Optional[float] = None
    rounds: int = 1
    seed: int = 0
    bucket: float = 1.0
    report: Optional[str] = None
    figure: Optional[str] = None

    def check(self) -> None:
        if self.mode not in ("sssp", "apsp", "subset"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.constraints not in ("trace", "optimality"):
            raise ConfigError(f"unknown constraint mode {self.constraints!r}")
        if not (math.isfinite(self.lower) and math.isfinite(self.upper) and 0 < self.lower <= self.upper):
            raise ConfigError(f"bounds must satisfy 0 < L <= U < inf, got {self.lower},{self.upper}")
        if not (math.isfinite(self.delta) and self.delta >= 0):
            raise ConfigError("delta must be a non-negative number")
        if self.epsilon is not None and not (math.isfinite(self.epsilon) and self.epsilon >= 0):
            raise ConfigError("epsilon must be a non-negative number")
        if self.rounds < 1:
            raise ConfigError("rounds must be at least 1")
        if not self.bucket > 0:
            raise ConfigError("bucket precision must be positive")
        if self.mode == "subset" and not self.sources:
            raise ConfigError("--sources needs at least one vertex")

    def resolve_sources(self, graph: WeightedGraph) -> List[int]:
        if self.mode == "apsp":
            return list(range(graph.vertex_count))
        chosen = list(self.sources) if self.mode == "subset" else [self.source]
        for s in chosen:
            if not 0 <= s < graph.vertex_count:
                raise ConfigError(f"source {s} out of range for {graph.vertex_count} vertices")
        return chosen


def attempt_schedule(delta: float) -> Iterator[Tuple[float, bool]]:
    """``(delta, keep_ties)`` pairs in the order anonymize tries them.

    Strict margins first.  Then the same margins with exact ties kept as
    equalities, which helps when trees from different sources break one tie
    in opposite directions.  Then a plain ``delta = 0``.
    """
    margins = [d for d in delta_schedule(delta) if d > 0]
    for keep_ties in (False, True):
        for d in margins:
            yield d, keep_ties
    yield 0.0, False


def delta_schedule(delta: float) -> Iterator[float]:
    """``delta, delta/10, ...`` while at least ``MIN_DELTA``, then 0."""
    d = delta
    while d >= MIN_DELTA:
        yield d
        d /= 10.0
    yield 0.0


def widened_bounds(graph: WeightedGraph, trees: Sequence[ShortestPathTree], lower: float, upper: float, epsilon: float) -> Tuple[float, float]:
    """Box used when path costs are pinned to ``D +/- epsilon``.

    ``L' = min(L, w_min * max(1 - epsilon / d_min, LOWER_FLOOR))`` and
    ``U' = max(U, longest preserved distance)``, where ``w_min`` is the
    smallest weight and ``d_min`` the shortest non-zero distance.
    """
    w_min = min(graph.weights)
    dists = [d for t in trees for d in t.dist if math.isfinite(d) and d > 0]
    if not dists:
        return lower, upper
    ratio = max(1.0 - epsilon / min(dists), LOWER_FLOOR)
    return min(lower, w_min * ratio), max(upper, max(dists))


def build_constraints(
    graph: WeightedGraph,
    trees: Sequence[ShortestPathTree],
    mode: str,
    delta: float,
    bounds: Bounds,
    epsilon: Optional[float] = None,
    keep_ties: bool = False,
) -> ConstraintSet:
    gen = gen_trace_constraints if mode == "trace" else gen_optimality_constraints
    sets = [gen(graph, t, delta, bounds, keep_ties) for t in trees]
    if epsilon is not None:
        for t in trees:
            targets = [v for v in range(t.vertex_count) if v != t.source and t.reachable(v)]
            sets.append(gen_cost_constraints(graph, t, targets, epsilon, bounds))
    return prune_implied(compose(sets, graph.edge_count, delta), bounds)


@dataclass
class _Prepared:
    graph: WeightedGraph
    sources: List[int]
    trees: List[ShortestPathTree]
    bounds: Bounds


def _prepare(config: RunConfig) -> _Prepared:
    config.check()
    graph = read_graph(config.input, config.directed)
    sources = config.resolve_sources(graph)
    trees = apsp_canonical(graph, sources, capture_trace=config.constraints == "trace")
    lower, upper = config.lower, config.upper
    if config.epsilon is not None:
        lower, upper = widened_bounds(graph, trees, lower, upper, config.epsilon)
    return _Prepared(graph, sources, trees, Bounds.uniform(graph.edge_count, lower, upper))


def _write_json(path: Optional[str], payload: Dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path is None:
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _guarded(fn):
    def wrapper(config: RunConfig) -> int:
        try:
            return fn(config)
        except ConfigError as exc:
            log.error("invalid configuration: %s", exc)
            return EXIT_CONFIG
        except GraphFormatError as exc:
            log.error("%s: %s", config.input, exc)
            return EXIT_IO
        except OSError as exc:
            log.error("%s", exc)
            return EXIT_IO

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@dataclass
class _Candidate:
    weights: Tuple[float, ...]
    tau: float
    round: int


def _solve_rounds(prep: _Prepared, cs: ConstraintSet, config: RunConfig) -> Tuple[LpStatus, Optional[_Candidate], int]:
    """Solve up to ``config.rounds`` random objectives; keep the verified round with smallest |tau|."""
    graph, bounds = prep.graph, prep.bounds
    rng = np.random.default_rng(config.seed)
    equations = equality_rows(cs.rows)
    magnitude = math.fsum(bounds.upper)
    best: Optional[_Candidate] = None
    used = 0
    for r in range(config.rounds):
        model = assemble_lp(cs, bounds, random_objective(graph.edge_count, rng))
        solution = solve(model)
        used += 1
        if solution.status is not LpStatus.OPTIMAL:
            return solution.status, None, used
        weights = tuple(float(np.clip(x, lo, hi)) for x, lo, hi in zip(solution.point, bounds.lower, bounds.upper))
        if equations:
            # kept ties must be exact ties for the float Dijkstra run
            weights = snap_to_equalities(weights, equations, magnitude)
            problems = check_feasible(model, weights)
            if problems:
                log.info("round %d: snapped point infeasible (%s), discarded", r, problems[0])
                continue
        candidate_graph = graph.with_weights(weights)
        rate, _ = preservation_rate(graph, candidate_graph, prep.sources)
        if rate < 1.0:
            log.info("round %d: LP optimum changes a shortest-path tree, discarded", r)
            continue
        tau = kendall_tau(graph.weights, weights) if graph.edge_count >= 2 else 0.0
        log.info("round %d: verified, tau=%.4f", r, tau)
        if best is None or abs(tau) < abs(best.tau):
            best = _Candidate(weights, tau, r)
    return LpStatus.OPTIMAL, best, used


@_guarded
def run_anonymize(config: RunConfig) -> int:
    """Re-weight the input graph so every selected shortest-path tree survives."""
    if config.output is None:
        raise ConfigError("anonymize needs an output path")
    prep = _prepare(config)
    graph = prep.graph
    cs: Optional[ConstraintSet] = None
    status = LpStatus.INFEASIBLE
    best: Optional[_Candidate] = None
    used = 0
    delta_used = config.delta
    ties_kept = False
    try:
        for delta, keep_ties in attempt_schedule(config.delta):
            cs = build_constraints(graph, prep.trees, config.constraints, delta, prep.bounds, config.epsilon, keep_ties)
            if keep_ties and not equality_rows(cs.rows):
                continue  # no ties: identical to the strict model already tried
            status, best, used = _solve_rounds(prep, cs, config)
            delta_used, ties_kept = delta, keep_ties
            if status is LpStatus.OPTIMAL:
                break
            log.warning("LP infeasible with delta=%g%s (%d rows)", delta, ", ties kept" if keep_ties else "", len(cs))
    except SimplexIterationLimit as exc:
        log.error("%s", exc)
        _write_failure(config, "solver-limit", delta_used, used, len(cs) if cs else 0, [])
        return EXIT_INFEASIBLE

    if delta_used == 0.0 and config.delta > 0:
        log.warning("fell back to delta=0: preserved paths may tie with alternatives")

    if status is not LpStatus.OPTIMAL:
        anchor = [min(max(w, lo), hi) for w, lo, hi in zip(graph.weights, prep.bounds.lower, prep.bounds.upper)]
        violated = [str(r.provenance) for r in violated_rows(cs, anchor)]
        _write_failure(config, "infeasible", delta_used, used, len(cs), violated)
        return EXIT_INFEASIBLE
    if best is None:
        _write_failure(config, "unverified", delta_used, used, len(cs), [])
        return EXIT_INFEASIBLE

    anonymized = graph.with_weights(best.weights)
    write_graph(anonymized, config.output)
    report = build_report(graph, anonymized, prep.sources, config.bucket, used, delta_used, config.seed)
    payload = {"status": "ok", **report.as_dict(), "constraint_mode": config.constraints,
               "ties_kept": ties_kept, "num_rows": len(cs), "selected_round": best.round, "violated": []}
    if config.report:
        _write_json(config.report, payload)
    if config.figure:
        from .plotting import plot_weights

        plot_weights(graph.weights, anonymized.weights, config.figure)
    log.info("anonymized %d edges, delta=%g, tau=%.4f", graph.edge_count, delta_used, best.tau)
    return EXIT_OK


def _write_failure(config: RunConfig, status: str, delta: float, rounds: int, rows: int, violated: List[str]) -> None:
    log.error("anonymization failed: %s", status)
    if not config.report:
        return
    payload = {
        "status": status,
        "preservation_rate": None,
        "kendall_tau": None,
        "k_anonymity": None,
        "min_relative_distance": None,
        "rounds_used": rounds,
        "delta_used": delta,
        "seed": config.seed,
        "constraint_mode": config.constraints,
        "num_rows": rows,
        "violated": violated,
    }
    _write_json(config.report, payload)


def model_for_export(config: RunConfig) -> LpModel:
    prep = _prepare(config)
    cs = build_constraints(prep.graph, prep.trees, config.constraints, config.delta, prep.bounds, config.epsilon)
    objective = random_objective(prep.graph.edge_count, np.random.default_rng(config.seed))
    return assemble_lp(cs, prep.bounds, objective)


@_guarded
def run_export_lp(config: RunConfig) -> int:
    """Write the LP of the first round (seeded objective, no margin fallback)."""
    if config.output is None:
        raise ConfigError("export-lp needs an output path")
    model = model_for_export(config)
    comment = (
        f"anonimos export: constraints={config.constraints} delta={config.delta!r} "
        f"seed={config.seed} rows={len(model.rows)} vars={model.num_vars}"
    )
    with open(config.output, "w", encoding="ascii", newline="\n") as fh:
        fh.write(export_lp_text(model, comment=comment))
    return EXIT_OK


def _compare(config: RunConfig) -> Tuple[Dict, WeightedGraph, WeightedGraph]:
    if config.anonymized is None:
        raise ConfigError("a second graph is required (--anonymized)")
    config.check()
    original = read_graph(config.input, config.directed)
    anonymized = read_graph(config.anonymized, config.directed)
    if not original.same_topology(anonymized):
        raise ConfigError("graphs differ in topology")
    sources = config.resolve_sources(original)
    report = build_report(original, anonymized, sources, config.bucket, 0, None, config.seed)
    return report.as_dict(), original, anonymized


@_guarded
def run_verify(config: RunConfig) -> int:
    """Exit 0 iff every checked shortest-path tree is unchanged."""
    payload, original, anonymized = _compare(config)
    ok = payload["preservation_rate"] == 1.0
    payload = {"status": "preserved" if ok else "changed", **payload}
    _write_json(config.report, payload)
    return EXIT_OK if ok else EXIT_CHANGED


@_guarded
def run_metrics(config: RunConfig) -> int:
    payload, original, anonymized = _compare(config)
    _write_json(config.report, {"status": "ok", **payload})
    if config.figure:
        from .plotting import plot_weights

        plot_weights(original.weights, anonymized.weights, config.figure)
    return EXIT_OK
