"""Dense bounded-variable primal simplex.

Solves ``min c.x  s.t.  A x <= b,  lower <= x <= upper``.  Variables are
shifted to ``[0, upper - lower]`` and every row gets a slack; rows whose
shifted right-hand side is negative start from an artificial variable that
phase 1 drives to zero.  Nonbasic variables sit at either bound, so a bound
flip replaces a pivot whenever the entering variable hits its own bound
first.

Pricing is Dantzig (most negative reduced cost) until the run has made
``3 * (rows + vars)`` degenerate steps, after which Bland's smallest-index
rule takes over for the rest of the solve and guarantees termination.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .constraints import LpModel

log = logging.getLogger(__name__)

MAX_ITERATIONS = 1_000_000
ROW_TOL = 1e-7
BOUND_TOL = 1e-9

_PIVOT_TOL = 1e-9
_COST_TOL = 1e-9
_STEP_TOL = 1e-12
_ZERO_TOL = 1e-13


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class SimplexIterationLimit(RuntimeError):
    """The iteration cap was hit before the simplex reached a verdict."""


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    point: Optional[Tuple[float, ...]] = None
    objective_value: Optional[float] = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    def __init__(self, T: np.ndarray, values: np.ndarray, basis: np.ndarray, upper: np.ndarray) -> None:
        self.T = T
        self.values = values  # current values of the basic variables, row-aligned
        self.basis = basis
        self.upper = upper  # shifted upper bound per column (lower is 0)
        self.at_upper = np.zeros(T.shape[1], dtype=bool)
        self.is_basic = np.zeros(T.shape[1], dtype=bool)
        self.is_basic[basis] = True
        self.iterations = 0
        self.degenerate = 0
        self.bland = False

    def run(self, cost: np.ndarray, degenerate_limit: int, max_iter: int) -> bool:
        """Minimize ``cost``; return False if the objective is unbounded below."""
        T, values, basis, upper = self.T, self.values, self.basis, self.upper
        d = cost - cost[basis] @ T
        movable = upper > 0
        while True:
            if self.iterations >= max_iter:
                raise SimplexIterationLimit(f"no verdict after {max_iter} iterations")
            improving = movable & ~self.is_basic & np.where(self.at_upper, d > _COST_TOL, d < -_COST_TOL)
            candidates = np.flatnonzero(improving)
            if candidates.size == 0:
                return True
            if self.bland:
                j = int(candidates[0])
            else:
                j = int(candidates[np.argmax(np.abs(d[candidates]))])
            sigma = -1.0 if self.at_upper[j] else 1.0
            col = sigma * T[:, j]

            step = upper[j]
            row = -1
            ratios = np.full(col.shape, np.inf)
            dec = col > _PIVOT_TOL
            ratios[dec] = np.maximum(values[dec], 0.0) / col[dec]
            inc = (col < -_PIVOT_TOL) & np.isfinite(upper[basis])
            ratios[inc] = np.maximum(upper[basis][inc] - values[inc], 0.0) / -col[inc]
            if ratios.size:
                best = ratios.min()
                if best < step:
                    ties = np.flatnonzero(ratios <= best + _STEP_TOL)
                    if self.bland:
                        row = int(ties[np.argmin(basis[ties])])
                    else:
                        row = int(ties[np.argmax(np.abs(col[ties]))])
                    step = ratios[row]
            if not np.isfinite(step):
                return False

            self.iterations += 1
            if step <= _STEP_TOL:
                self.degenerate += 1
                if not self.bland and self.degenerate > degenerate_limit:
                    log.debug("switching to Bland's rule after %d degenerate steps", self.degenerate)
                    self.bland = True

            values -= step * col
            if row < 0:
                self.at_upper[j] = not self.at_upper[j]
                continue

            leaving = basis[row]
            hit_upper = col[row] < 0
            entering_value = upper[j] - step if self.at_upper[j] else step
            pivot_row = T[row] / T[row, j]
            cols = np.flatnonzero(pivot_row)  # pivot rows are very sparse here
            factor = T[:, j].copy()
            block = T[:, cols] - np.outer(factor, pivot_row[cols])
            block[np.abs(block) < _ZERO_TOL] = 0.0
            T[:, cols] = block
            T[row] = pivot_row
            d[cols] -= d[j] * pivot_row[cols]
            values[row] = entering_value
            basis[row] = j
            self.is_basic[leaving] = False
            self.is_basic[j] = True
            self.at_upper[leaving] = hit_upper
            self.at_upper[j] = False

    def column_values(self) -> np.ndarray:
        x = np.where(self.at_upper, self.upper, 0.0)
        x[self.basis] = self.values
        return x


def solve_arrays(
    c: Sequence[float],
    A,
    b: Sequence[float],
    lower: Sequence[float],
    upper: Sequence[float],
    max_iter: int = MAX_ITERATIONS,
) -> LpSolution:
    """Solve ``min c.x, A x <= b, lower <= x <= upper``.

    ``lower`` must be finite; ``upper`` may contain ``inf``, which is the
    only way to get an unbounded verdict.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    b = np.asarray(b, dtype=float).reshape(-1)
    m = b.size
    A = np.asarray(A, dtype=float).reshape(m, n)
    lower = np.asarray(lower, dtype=float).reshape(n)
    upper = np.asarray(upper, dtype=float).reshape(n)
    if not np.all(np.isfinite(lower)):
        raise ValueError("lower bounds must be finite")
    if np.any(lower > upper):
        return LpSolution(LpStatus.INFEASIBLE)

    shifted_rhs = b - A @ lower
    negative = shifted_rhs < 0
    n_art = int(negative.sum())
    width = n + m + n_art
    M = np.zeros((m, width))
    M[:, :n] = A
    M[:, n : n + m] = np.eye(m)
    M[negative] *= -1.0
    art_rows = np.flatnonzero(negative)
    M[art_rows, n + m + np.arange(n_art)] = 1.0
    rhs = np.abs(shifted_rhs)

    basis = np.arange(n, n + m)
    basis[art_rows] = n + m + np.arange(n_art)
    col_upper = np.concatenate([upper - lower, np.full(m + n_art, np.inf)])
    tab = _Tableau(np.array(M, order="F"), rhs.copy(), basis, col_upper)  # M stays pristine for _refine
    degenerate_limit = 3 * (m + n)

    if n_art:
        phase1 = np.zeros(width)
        phase1[n + m :] = 1.0
        tab.run(phase1, degenerate_limit, max_iter)
        infeasibility = tab.column_values()[n + m :].sum()
        if infeasibility > 1e-9 * (1.0 + np.abs(rhs).max()):
            return LpSolution(LpStatus.INFEASIBLE, iterations=tab.iterations)
        col_upper[n + m :] = 0.0  # artificials may leave but never re-enter

    cost = np.concatenate([c, np.zeros(m + n_art)])
    if not tab.run(cost, degenerate_limit, max_iter):
        return LpSolution(LpStatus.UNBOUNDED, iterations=tab.iterations)

    x = tab.column_values()
    x = _refine(M, rhs, tab, x)
    point = np.clip(lower + x[:n], lower, upper)
    return LpSolution(LpStatus.OPTIMAL, tuple(float(v) for v in point), float(c @ point), tab.iterations)


def _refine(M: np.ndarray, rhs: np.ndarray, tab: _Tableau, x: np.ndarray) -> np.ndarray:
    """Recompute basic values from the original columns to shed accumulated pivot error."""
    if M.shape[0] == 0:
        return x
    nonbasic = ~tab.is_basic & tab.at_upper
    b_eff = rhs - M[:, nonbasic] @ tab.upper[nonbasic]
    try:
        xb = np.linalg.solve(M[:, tab.basis], b_eff)
    except np.linalg.LinAlgError:
        return x
    if not np.all(np.isfinite(xb)):
        return x
    refined = x.copy()
    refined[tab.basis] = xb
    return refined


def solve(model: LpModel, max_iter: int = MAX_ITERATIONS) -> LpSolution:
    A, b = model.matrices()
    return solve_arrays(model.objective, A, b, model.bounds.lower, model.bounds.upper, max_iter=max_iter)


def check_feasible(model: LpModel, point: Sequence[float], tol: float = ROW_TOL) -> List[str]:
    """Every row or bound the point violates by more than ``tol * (1 + |rhs|)``."""
    if len(point) != model.num_vars:
        raise ValueError(f"point has {len(point)} entries, model has {model.num_vars} variables")
    problems: List[str] = []
    for i, row in enumerate(model.rows):
        lhs = row.lhs(point)
        if lhs - row.rhs > tol * (1 + abs(row.rhs)):
            where = f" ({row.provenance})" if row.provenance else ""
            problems.append(f"row c{i}: lhs {lhs!r} > rhs {row.rhs!r}{where}")
    for e, (x, lo, hi) in enumerate(zip(point, model.bounds.lower, model.bounds.upper)):
        if lo - x > tol * (1 + abs(lo)):
            problems.append(f"x_{e} = {x!r} below lower bound {lo!r}")
        if x - hi > tol * (1 + abs(hi)):
            problems.append(f"x_{e} = {x!r} above upper bound {hi!r}")
    return problems
