"""Exact linear programming over the rationals.

A two-phase simplex on an integer tableau (fraction-free pivoting) with
Bland's rule, so it terminates on degenerate problems and never rounds.
Problems have the form::

    maximize  c . x   subject to  A x = b,  x >= 0

Only equality rows are supported; every LP the coherence module builds
is naturally in that shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _integer_row(coeffs: Sequence, rhs) -> list[int]:
    vals = [Fraction(v) for v in coeffs] + [Fraction(rhs)]
    if vals[-1] < 0:
        vals = [-v for v in vals]
    den = 1
    for v in vals:
        den = lcm(den, v.denominator)
    return [int(v * den) for v in vals]


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.rows = rows  # constraint rows followed by the objective row
        self.basis = basis
        self.ncols = ncols  # structural columns, rhs lives at index ncols
        self.det = 1

    @property
    def m(self) -> int:
        return len(self.rows) - 1

    def pivot(self, r: int, s: int) -> None:
        det = kernels.pivot(self.rows, r, s, self.det)
        if det < 0:
            for row in self.rows:
                for j in range(len(row)):
                    row[j] = -row[j]
            det = -det
        self.det = det
        self.basis[r] = s

    def run(self, allowed: int) -> str:
        """Maximize the objective row; columns >= ``allowed`` never enter."""
        obj = self.rows[-1]
        rhs = self.ncols
        while True:
            s = -1
            for j in range(allowed):
                if obj[j] > 0:
                    s = j
                    break
            if s < 0:
                return OPTIMAL
            r = kernels.leaving_row(self.rows, s, rhs, self.basis, self.m)
            if r < 0:
                return UNBOUNDED
            self.pivot(r, s)


def solve(
    A: Sequence[Sequence],
    b: Sequence,
    c: Sequence | None = None,
    *,
    maximize: bool = True,
) -> LPResult:
    """Solve ``max/min c.x`` s.t. ``A x = b``, ``x >= 0`` exactly.

    With ``c`` omitted this is a pure feasibility test.  The returned
    ``x`` is a basic optimal solution.

    >>> solve([[1, 1]], [1], [1, 2]).value
    Fraction(2, 1)
    >>> solve([[1, 1]], [-1]).status
    'infeasible'
    """
    m = len(A)
    n = len(A[0]) if m else (len(c) if c is not None else 0)
    if c is not None and len(c) != n:
        raise ValueError("objective length does not match the constraint matrix")
    if m == 0:
        x = tuple(Fraction(0) for _ in range(n))
        if c is not None and any((Fraction(v) > 0) == maximize and v for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), x)

    width = n + m
    rows = []
    for i in range(m):
        base = _integer_row(A[i], b[i])
        row = base[:n] + [0] * m + [base[n]]
        row[n + i] = 1
        rows.append(row)
    obj = [sum(rows[i][j] for i in range(m)) for j in range(n)] + [0] * m
    obj.append(sum(rows[i][width] for i in range(m)))
    rows.append(obj)
    tab = _Tableau(rows, list(range(n, n + m)), width)

    tab.run(n)
    if tab.rows[-1][width] != 0:
        return LPResult(INFEASIBLE)

    # Drive artificial variables out of the basis; drop redundant rows.
    i = 0
    while i < tab.m:
        if tab.basis[i] >= n:
            row = tab.rows[i]
            s = next((j for j in range(n) if row[j] != 0), -1)
            if s < 0:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, s)
        i += 1

    # Rebuild without artificial columns.
    det = tab.det
    rows = [row[:n] + [row[width]] for row in tab.rows[:-1]]
    basis = tab.basis
    if c is None:
        cint = [0] * n
        scale = 1
    else:
        cf = [Fraction(v) if maximize else -Fraction(v) for v in c]
        scale = 1
        for v in cf:
            scale = lcm(scale, v.denominator)
        cint = [int(v * scale) for v in cf]
    obj = [cint[j] * det for j in range(n)] + [0]
    for i, bj in enumerate(basis):
        cb = cint[bj]
        if cb:
            row = rows[i]
            for j in range(n + 1):
                obj[j] -= cb * row[j]
    rows.append(obj)
    tab = _Tableau(rows, basis, n)
    tab.det = det

    status = tab.run(n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    det = tab.det
    x = [Fraction(0)] * n
    for i, bj in enumerate(tab.basis):
        x[bj] = Fraction(tab.rows[i][n], det)
    value = Fraction(-tab.rows[-1][n], det * scale)
    if not maximize:
        value = -value
    return LPResult(OPTIMAL, value, tuple(x))


def feasible_point(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Some ``x >= 0`` with ``A x = b``, or None."""
    res = solve(A, b)
    return res.x if res.status == OPTIMAL else None
