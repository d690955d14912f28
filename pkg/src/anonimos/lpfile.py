"""CPLEX-style LP text for handing models to external solvers.

Only the dialect written by :func:`export_lp_text` is read back::

    \\ comment
    Minimize
     obj: 0.25 x_0 - 0.5 x_1
    Subject To
     c0: x_0 + x_1 - x_2 <= -1
    Bounds
     1 <= x_0 <= 1000
    End

Numbers are written with 17 significant digits so a round trip is exact.
Long rows wrap onto continuation lines starting with whitespace.
"""

from __future__ import annotations

import re
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .constraints import Bounds, ConstraintRow, LpModel

_WRAP = 200
_LABEL = re.compile(r"^[A-Za-z_][\w.]*:")
_SECTIONS = {"minimize": "objective", "subject to": "rows", "bounds": "bounds", "end": "end"}


class LpFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _num(x: float) -> str:
    return f"{x:.17g}"


def _terms(pairs: Sequence[Tuple[int, float]], prefix: str, keep_zero: bool) -> List[str]:
    out: List[str] = []
    for e, a in pairs:
        if a == 0 and not keep_zero:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        body = f"{prefix}{e}" if mag == 1 else f"{_num(mag)} {prefix}{e}"
        if not out:
            out.append(body if sign == "+" else f"- {body}")
        else:
            out.append(f"{sign} {body}")
    return out


def _wrap(head: str, tokens: List[str]) -> List[str]:
    lines, current = [], head
    for tok in tokens:
        if len(current) + len(tok) + 1 > _WRAP and current.strip() != head.strip():
            lines.append(current)
            current = "   " + tok
        else:
            current = f"{current} {tok}"
    lines.append(current)
    return lines


def export_lp_text(model: LpModel, prefix: str = "x_", comment: Optional[str] = None) -> str:
    lines: List[str] = []
    if comment:
        lines.extend(f"\\ {c}" for c in comment.splitlines())
    lines.append("Minimize")
    obj = _terms(list(enumerate(model.objective)), prefix, keep_zero=True)
    lines.extend(_wrap(" obj:", obj or ["0"]))
    if model.rows:
        lines.append("Subject To")
        for i, row in enumerate(model.rows):
            terms = _terms(row.coeffs, prefix, keep_zero=False) or ["0"]
            lines.extend(_wrap(f" c{i}:", terms + ["<=", _num(row.rhs)]))
    lines.append("Bounds")
    for e, (lo, hi) in enumerate(zip(model.bounds.lower, model.bounds.upper)):
        lines.append(f" {_num(lo)} <= {prefix}{e} <= {_num(hi)}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def _statements(text: str) -> Iterator[Tuple[str, int, str]]:
    """Yield ``(section, line number, statement)`` with continuation lines joined."""
    section = None
    pending: Optional[Tuple[int, str]] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("\\"):
            continue
        key = stripped.lower()
        if key in _SECTIONS:
            if pending:
                yield section, pending[0], pending[1]
                pending = None
            section = _SECTIONS[key]
            if section == "end":
                return
            continue
        if section is None:
            raise LpFormatError(f"content before any section: {stripped!r}", lineno)
        if section != "bounds" and not _LABEL.match(stripped):
            if pending is None:
                raise LpFormatError(f"expected a labelled statement, got {stripped!r}", lineno)
            pending = (pending[0], f"{pending[1]} {stripped}")
            continue
        if pending:
            yield section, pending[0], pending[1]
        pending = (lineno, stripped)
    if pending:
        yield section, pending[0], pending[1]
    raise LpFormatError("missing End")


def _linear(tokens: List[str], lineno: int, var_index) -> List[Tuple[int, float]]:
    terms: List[Tuple[int, float]] = []
    i = 0
    while i < len(tokens):
        sign = 1.0
        if tokens[i] in ("+", "-"):
            sign = -1.0 if tokens[i] == "-" else 1.0
            i += 1
        if i >= len(tokens):
            raise LpFormatError("dangling sign", lineno)
        coef = 1.0
        try:
            coef = float(tokens[i])
            i += 1
        except ValueError:
            pass
        if i >= len(tokens):
            if not terms and coef == 0.0:
                return terms  # bare "0": empty expression
            raise LpFormatError("coefficient without variable", lineno)
        terms.append((var_index(tokens[i], lineno), sign * coef))
        i += 1
    return terms


def parse_lp_text(text: str, prefix: str = "x_") -> LpModel:
    """Rebuild an :class:`LpModel` from :func:`export_lp_text` output."""
    name_re = re.compile(re.escape(prefix) + r"(\d+)$")
    raw_objective: Optional[Tuple[int, List[str]]] = None
    raw_rows: List[Tuple[int, List[str]]] = []
    bounds: Dict[int, Tuple[float, float]] = {}

    def index_of(name: str, lineno: int) -> int:
        m = name_re.match(name)
        if not m:
            raise LpFormatError(f"unknown variable {name!r}", lineno)
        return int(m.group(1))

    for section, lineno, stmt in _statements(text):
        if section == "objective":
            if raw_objective is not None:
                raise LpFormatError("second objective", lineno)
            label, _, body = stmt.partition(":")
            if not _:
                raise LpFormatError("objective needs a label", lineno)
            raw_objective = (lineno, body.split())
        elif section == "rows":
            label, colon, body = stmt.partition(":")
            if not colon:
                raise LpFormatError("constraint needs a label", lineno)
            raw_rows.append((lineno, body.split()))
        elif section == "bounds":
            parts = stmt.split()
            if len(parts) != 5 or parts[1] != "<=" or parts[3] != "<=":
                raise LpFormatError(f"expected 'L <= var <= U', got {stmt!r}", lineno)
            e = index_of(parts[2], lineno)
            if e in bounds:
                raise LpFormatError(f"variable {parts[2]} bounded twice", lineno)
            try:
                bounds[e] = (float(parts[0]), float(parts[4]))
            except ValueError:
                raise LpFormatError(f"bad bound value in {stmt!r}", lineno) from None

    n = len(bounds)
    if sorted(bounds) != list(range(n)):
        raise LpFormatError("bounds must declare variables 0..n-1 exactly once")

    def declared(name: str, lineno: int) -> int:
        e = index_of(name, lineno)
        if e not in bounds:
            raise LpFormatError(f"unknown variable {name!r}", lineno)
        return e

    objective = [0.0] * n
    if raw_objective is None:
        raise LpFormatError("missing objective")
    for e, a in _linear(raw_objective[1], raw_objective[0], declared):
        objective[e] += a

    rows: List[ConstraintRow] = []
    for lineno, tokens in raw_rows:
        if len(tokens) < 2 or tokens[-2] != "<=":
            raise LpFormatError("constraint must end with '<= rhs'", lineno)
        try:
            rhs = float(tokens[-1])
        except ValueError:
            raise LpFormatError(f"bad right-hand side {tokens[-1]!r}", lineno) from None
        acc: Dict[int, float] = {}
        for e, a in _linear(tokens[:-2], lineno, declared):
            acc[e] = acc.get(e, 0.0) + a
        coeffs = []
        for e, a in sorted(acc.items()):
            if a != int(a):
                raise LpFormatError(f"non-integer coefficient {a!r}", lineno)
            if a:
                coeffs.append((e, int(a)))
        rows.append(ConstraintRow(tuple(coeffs), rhs))

    lower = tuple(bounds[e][0] for e in range(n))
    upper = tuple(bounds[e][1] for e in range(n))
    return LpModel(tuple(objective), tuple(rows), Bounds(lower, upper))
