import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anonimos.constraints import Bounds, ConstraintRow, LpModel
from anonimos.solver import LpStatus, SimplexIterationLimit, check_feasible, solve, solve_arrays
from oracles import lp_by_vertex_enumeration
from support import random_lp

TRI_ROW = ConstraintRow(((0, 1), (1, 1), (2, -1)), -1.0)


def test_two_variable_vertex():
    sol = solve_arrays([-1, -2], [[1, 1]], [1], [0, 0], [1, 1])
    assert sol.status is LpStatus.OPTIMAL
    assert sol.point == (0.0, 1.0)
    assert sol.objective_value == -2.0


def test_unbounded_needs_an_infinite_upper_bound():
    sol = solve_arrays([-1], np.zeros((0, 1)), [], [0], [math.inf])
    assert sol.status is LpStatus.UNBOUNDED
    assert sol.point is None and sol.objective_value is None


def test_contradictory_rows_are_infeasible():
    sol = solve_arrays([1], [[1], [-1]], [0, -1], [0], [1])
    assert sol.status is LpStatus.INFEASIBLE


def test_triangle_model():
    model = LpModel((1.0, 1.0, -1.0), (TRI_ROW,), Bounds.uniform(3, 1, 1000))
    sol = solve(model)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.point == (1.0, 1.0, 1000.0)
    assert sol.objective_value == -998.0


def test_beale_cycling_example_terminates():
    # degenerate LP on which textbook Dantzig pricing cycles
    c = [-0.75, 20, -0.5, 6]
    A = [[0.25, -8, -1, 9], [0.5, -12, -0.5, 3]]
    sol = solve_arrays(c, A, [0, 0], [0, 0, 0, 0], [math.inf, math.inf, 1, math.inf])
    assert sol.status is LpStatus.OPTIMAL
    assert sol.objective_value == pytest.approx(-1.25)


def test_iteration_cap_is_not_a_status():
    with pytest.raises(SimplexIterationLimit):
        solve_arrays([-1, -2], [[1, 1]], [1], [0, 0], [1, 1], max_iter=1)


def test_check_feasible():
    zero_margin = LpModel((0.0,) * 3, (ConstraintRow(TRI_ROW.coeffs, 0.0),), Bounds.uniform(3, 1, 1000))
    assert check_feasible(zero_margin, (1, 1, 3)) == []
    margin = LpModel((0.0,) * 3, (TRI_ROW,), Bounds.uniform(3, 1, 1000))
    problems = check_feasible(margin, (1, 1, 1))
    assert len(problems) == 1 and "lhs 1" in problems[0]
    empty = LpModel((0.0,) * 3, (), Bounds.uniform(3, 1, 10))
    assert check_feasible(empty, (2, 3, 4)) == []
    assert len(check_feasible(empty, (0.5, 3, 11))) == 2
    with pytest.raises(ValueError):
        check_feasible(empty, (1, 2))


def test_empty_model_picks_box_corner():
    model = LpModel((0.5, -0.25, 0.0), (), Bounds.uniform(3, 2, 9))
    sol = solve(model)
    assert sol.point[:2] == (2.0, 9.0)


@pytest.mark.parametrize("seed", range(60))
def test_matches_vertex_enumeration(seed):
    c, A, b, lower, upper = random_lp(np.random.default_rng(seed))
    status, value = lp_by_vertex_enumeration(c, A, b, lower, upper)
    sol = solve_arrays(c, A, b, lower, upper)
    assert sol.status.value == status
    if status == "optimal":
        assert sol.objective_value == pytest.approx(value, rel=1e-6, abs=1e-9)
        model = LpModel(
            tuple(c),
            tuple(ConstraintRow(tuple((j, int(a)) for j, a in enumerate(row) if a), float(r)) for row, r in zip(A, b)),
            Bounds(tuple(lower), tuple(upper)),
        )
        assert check_feasible(model, sol.point, 1e-7) == []


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_finite_box_never_unbounded_and_deterministic(seed):
    c, A, b, lower, upper = random_lp(np.random.default_rng(seed))
    first = solve_arrays(c, A, b, lower, upper)
    assert first.status is not LpStatus.UNBOUNDED
    assert solve_arrays(c, A, b, lower, upper) == first
