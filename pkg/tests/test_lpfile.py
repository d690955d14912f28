import numpy as np
import pytest

from anonimos.constraints import Bounds, ConstraintRow, LpModel, assemble_lp, random_objective
from anonimos.graph import parse_edge_list
from anonimos.lpfile import LpFormatError, export_lp_text, parse_lp_text
from anonimos.paths import apsp_canonical
from anonimos.pipeline import build_constraints
from support import TRIANGLE, er_graph


def triangle_model():
    row = ConstraintRow(((0, 1), (1, 1), (2, -1)), -1.0)
    return LpModel((1.0, 1.0, -1.0), (row,), Bounds.uniform(3, 1, 1000))


def test_triangle_row_rendering():
    text = export_lp_text(triangle_model())
    assert "c0: x_0 + x_1 - x_2 <= -1" in text
    assert text.startswith("Minimize\n obj: x_0 + x_1 - x_2\n")
    assert " 1 <= x_2 <= 1000\n" in text
    assert text.endswith("End\n")


def test_empty_row_model():
    model = LpModel((0.5, -2.0), (), Bounds.uniform(2, 1, 10))
    text = export_lp_text(model)
    assert "Subject To" not in text
    assert text.splitlines() == ["Minimize", " obj: 0.5 x_0 - 2 x_1", "Bounds", " 1 <= x_0 <= 10", " 1 <= x_1 <= 10", "End"]
    assert parse_lp_text(text) == model


def test_round_trip_exact():
    model = triangle_model()
    assert parse_lp_text(export_lp_text(model)) == model
    odd = LpModel((0.1, -1 / 3, 0.0), (ConstraintRow(((0, 2), (2, -1)), 1e-7),), Bounds((0.3, 1.0, 2.0), (1e6, 7.25, 2.0)))
    assert parse_lp_text(export_lp_text(odd, comment="hello\nworld")) == odd


def test_custom_prefix():
    text = export_lp_text(triangle_model(), prefix="w")
    assert "c0: w0 + w1 - w2 <= -1" in text
    assert parse_lp_text(text, prefix="w") == triangle_model()


def test_long_rows_wrap_and_parse():
    coeffs = tuple((e, 1 if e % 2 else -1) for e in range(120))
    model = LpModel(tuple(np.linspace(-1, 1, 120)), (ConstraintRow(coeffs, 3.0),), Bounds.uniform(120, 1, 2))
    text = export_lp_text(model)
    assert max(len(line) for line in text.splitlines()) <= 260
    assert parse_lp_text(text) == model


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("Minimize\n obj: x_0\nBounds\n 1 <= x_0 <= 2\n", "missing End"),
        ("Minimize\n obj: y_0\nBounds\n 1 <= x_0 <= 2\nEnd\n", "unknown variable"),
        ("Minimize\n obj: x_1\nBounds\n 1 <= x_0 <= 2\nEnd\n", "unknown variable"),
        ("Minimize\n obj: x_0\nSubject To\n c0: x_0 >= 1\nBounds\n 1 <= x_0 <= 2\nEnd\n", "<= rhs"),
        ("Minimize\n obj: x_0\nBounds\n 1 <= x_0\nEnd\n", "L <= var <= U"),
        ("x_0\nMinimize\n", "before any section"),
        ("Minimize\n obj: x_0\nSubject To\n c0: 0.5 x_0 <= 1\nBounds\n 1 <= x_0 <= 2\nEnd\n", "non-integer"),
    ],
)
def test_syntax_errors(text, fragment):
    with pytest.raises(LpFormatError, match=fragment):
        parse_lp_text(text)


def test_error_reports_line():
    with pytest.raises(LpFormatError) as info:
        parse_lp_text("Minimize\n obj: x_0\nBounds\n 1 <= z <= 2\nEnd\n")
    assert info.value.line == 4


@pytest.mark.parametrize("seed", range(10))
def test_round_trip_generated_models(seed):
    g = er_graph(seed, 8 + seed)
    bounds = Bounds.uniform(g.edge_count, 1, 1000)
    trees = apsp_canonical(g, capture_trace=True)
    cs = build_constraints(g, trees, "trace" if seed % 2 else "optimality", 1.0, bounds, epsilon=0.5)
    model = assemble_lp(cs, bounds, random_objective(g.edge_count, seed))
    assert parse_lp_text(export_lp_text(model)) == model
