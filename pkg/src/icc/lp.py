"""Exact-rational two-phase simplex for small covering LPs.

Everything runs on fractions.Fraction so half-integral optima come out exact.
Bland's rule keeps pivoting deterministic and cycle-free; problem sizes here
are a dozen rows by a few thousand columns at most.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class InfeasibleError(ValueError):
    """The LP has no feasible point."""


def solve_cover_lp(
    costs: Sequence[Fraction], columns: Sequence[int], n_rows: int
) -> tuple[Fraction, dict[int, Fraction]]:
    """Minimize costs @ f subject to (coverage) A f >= 1, f >= 0.

    Column j covers the rows set in the bitmask columns[j].  Returns the
    optimal value and the nonzero variables.  Nonnegative costs keep the
    optimum bounded, and a cover variable never usefully exceeds 1, so box
    constraints are omitted.
    """
    n_cols = len(costs)
    if len(columns) != n_cols:
        raise ValueError("costs and columns must align")
    # Tableau layout: [structural | surplus | artificial | rhs], one row per
    # covering constraint.  Phase 1 minimizes the artificial sum.
    n_surplus = n_rows
    art0 = n_cols + n_surplus
    width = n_cols + 2 * n_rows + 1
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    for r in range(n_rows):
        row = [ZERO] * width
        for j, mask in enumerate(columns):
            if (mask >> r) & 1:
                row[j] = ONE
        row[n_cols + r] = -ONE  # surplus
        row[art0 + r] = ONE  # artificial
        row[-1] = ONE
        rows.append(row)
        basis.append(art0 + r)

    def pivot(obj: list[Fraction], r: int, c: int) -> None:
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(n_rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        if obj[c]:
            f = obj[c]
            obj[:] = [x - f * y for x, y in zip(obj, prow)]
        basis[r] = c

    def reduced(cost_row: list[Fraction]) -> list[Fraction]:
        obj = cost_row[:]
        for r, b in enumerate(basis):
            if obj[b]:
                f = obj[b]
                obj = [x - f * y for x, y in zip(obj, rows[r])]
        return obj

    def run_phase(cost_row: list[Fraction], allowed: int) -> None:
        obj = reduced(cost_row)
        while True:
            enter = next((j for j in range(allowed) if obj[j] < 0), None)
            if enter is None:
                return
            ratio = None
            leave = None
            for r in range(n_rows):
                a = rows[r][enter]
                if a > 0:
                    q = rows[r][-1] / a
                    if ratio is None or q < ratio or (q == ratio and basis[r] < basis[leave]):
                        ratio, leave = q, r
            if leave is None:
                raise ValueError("unbounded LP")  # impossible for covering LPs
            pivot(obj, leave, enter)

    phase1 = [ZERO] * width
    for j in range(art0, art0 + n_rows):
        phase1[j] = ONE
    run_phase(phase1, art0 + n_rows)
    value1 = sum(rows[r][-1] for r in range(n_rows) if basis[r] >= art0)
    if value1 != 0:
        raise InfeasibleError("phase 1 ended with positive artificial value")
    # Degenerate artificials may linger in the basis at level zero; pivot them
    # onto any eligible non-artificial column (all-zero rows are redundant and
    # may keep their artificial, which phase 2 never lets enter).
    for r in range(n_rows):
        if basis[r] >= art0:
            c = next((j for j in range(art0) if rows[r][j] != 0), None)
            if c is not None:
                pivot([ZERO] * width, r, c)

    phase2 = [ZERO] * width
    for j in range(n_cols):
        phase2[j] = Fraction(costs[j])
    run_phase(phase2, art0)  # artificials barred from entering
    solution: dict[int, Fraction] = {}
    for r, b in enumerate(basis):
        if b < n_cols and rows[r][-1]:
            solution[b] = rows[r][-1]
    value = sum(Fraction(costs[j]) * v for j, v in solution.items())
    return value, solution
