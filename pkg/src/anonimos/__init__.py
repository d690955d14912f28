"""Edge-weight anonymization that keeps shortest paths intact.

The shortest-path structure of a weighted graph is turned into linear
inequalities over fresh edge weights; an LP with a random objective picks a
new weight vector that satisfies them, so paths survive while the weight
values and their ordering do not.
"""

from .constraints import (
    Bounds,
    ConstraintRow,
    ConstraintSet,
    LpModel,
    Provenance,
    assemble_lp,
    compose,
    gen_cost_constraints,
    gen_optimality_constraints,
    gen_trace_constraints,
    prune_implied,
    random_objective,
)
from .graph import Edge, GraphFormatError, WeightedGraph, parse_edge_list, validate, write_edge_list
from .lpfile import LpFormatError, export_lp_text, parse_lp_text
from .metrics import AnonymityReport, build_report, k_anonymity, kendall_tau, preservation_rate, weight_distance_profile
from .paths import ShortestPathTree, TraceDecision, apsp_canonical, path_to, sssp_canonical, trees_equal
from .solver import LpSolution, LpStatus, SimplexIterationLimit, check_feasible, solve

__version__ = "0.1.0"

__all__ = [
    "AnonymityReport",
    "Bounds",
    "ConstraintRow",
    "ConstraintSet",
    "Edge",
    "GraphFormatError",
    "LpFormatError",
    "LpModel",
    "LpSolution",
    "LpStatus",
    "Provenance",
    "ShortestPathTree",
    "SimplexIterationLimit",
    "TraceDecision",
    "WeightedGraph",
    "apsp_canonical",
    "assemble_lp",
    "build_report",
    "check_feasible",
    "compose",
    "export_lp_text",
    "gen_cost_constraints",
    "gen_optimality_constraints",
    "gen_trace_constraints",
    "k_anonymity",
    "kendall_tau",
    "parse_edge_list",
    "parse_lp_text",
    "path_to",
    "preservation_rate",
    "prune_implied",
    "random_objective",
    "solve",
    "sssp_canonical",
    "trees_equal",
    "validate",
    "weight_distance_profile",
    "write_edge_list",
]
