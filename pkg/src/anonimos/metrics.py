"""What an anonymization kept (shortest-path trees) and what it scrambled
(weight values, their ordering, and how identifying each weight is)."""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .graph import WeightedGraph
from .paths import sssp_canonical, trees_equal


@dataclass
class AnonymityReport:
    preservation_rate: float
    kendall_tau: float
    k_anonymity: int
    min_relative_distance: float
    median_relative_distance: float
    max_relative_distance: float
    rounds_used: int
    delta_used: Optional[float]
    seed: int
    sources: List[int] = field(default_factory=list)
    preserved: List[bool] = field(default_factory=list)
    bucket: float = 1.0

    def as_dict(self) -> Dict:
        return asdict(self)


def preservation_rate(
    original: WeightedGraph, anonymized: WeightedGraph, sources: Sequence[int]
) -> Tuple[float, List[bool]]:
    """Fraction of sources whose canonical tree survives the re-weighting, plus per-source verdicts."""
    if not original.same_topology(anonymized):
        raise ValueError("graphs differ in topology; only weights may change")
    if not sources:
        raise ValueError("no sources to check")
    verdicts = [
        trees_equal(sssp_canonical(original, s), sssp_canonical(anonymized, s)) for s in sources
    ]
    return sum(verdicts) / len(verdicts), verdicts


def kendall_tau(a: Sequence[float], b: Sequence[float]) -> float:
    """Kendall tau-b; 0.0 when either sequence is constant."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    n = len(a)
    if n < 2:
        raise ValueError("need at least two observations")
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    net = 0
    ties_x = ties_y = 0
    for i in range(n - 1):
        sx = np.sign(x[i + 1 :] - x[i])
        sy = np.sign(y[i + 1 :] - y[i])
        net += int(np.sum(sx * sy))
        ties_x += int(np.count_nonzero(sx == 0))
        ties_y += int(np.count_nonzero(sy == 0))
    pairs = n * (n - 1) // 2
    denom = (pairs - ties_x) * (pairs - ties_y)
    if denom == 0:
        return 0.0
    return net / math.sqrt(denom)


def k_anonymity(weights: Sequence[float], precision: float = 1.0) -> int:
    """Smallest bucket size after rounding each weight to a multiple of ``precision`` (half up)."""
    if precision <= 0:
        raise ValueError("precision must be positive")
    if len(weights) == 0:
        raise ValueError("no weights")
    buckets = Counter(math.floor(w / precision + 0.5) for w in weights)
    return min(buckets.values())


def weight_distance_profile(original: Sequence[float], anonymized: Sequence[float]) -> Tuple[float, float, float]:
    """(min, median, max) of ``|x - w| / w`` over edges."""
    if len(original) != len(anonymized):
        raise ValueError("edge count mismatch")
    if not original:
        return 0.0, 0.0, 0.0
    rel = [abs(x - w) / w for w, x in zip(original, anonymized)]
    return min(rel), float(statistics.median(rel)), max(rel)


def build_report(
    original: WeightedGraph,
    anonymized: WeightedGraph,
    sources: Sequence[int],
    bucket: float = 1.0,
    rounds_used: int = 0,
    delta_used: Optional[float] = None,
    seed: int = 0,
) -> AnonymityReport:
    rate, verdicts = preservation_rate(original, anonymized, sources)
    if original.edge_count >= 2:
        tau = kendall_tau(original.weights, anonymized.weights)
    else:
        tau = 0.0
    lo, mid, hi = weight_distance_profile(original.weights, anonymized.weights)
    return AnonymityReport(
        preservation_rate=rate,
        kendall_tau=tau,
        k_anonymity=k_anonymity(anonymized.weights, bucket),
        min_relative_distance=lo,
        median_relative_distance=mid,
        max_relative_distance=hi,
        rounds_used=rounds_used,
        delta_used=delta_used,
        seed=seed,
        sources=list(sources),
        preserved=verdicts,
        bucket=bucket,
    )
