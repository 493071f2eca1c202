"""Two-phase tableau simplex over Fractions with Bland's pivoting rule.

Problems are posed over free variables ``x`` with constraints
``a . x + c >= 0`` or ``a . x + c == 0``.  Internally each free variable is
split as ``x = u - v`` with ``u, v >= 0`` and inequality rows get a surplus
column, which gives the standard equality form the tableau works on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

ZERO = Fraction(0)


class LpStatus(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    value: Optional[Fraction] = None
    witness: Optional[tuple[Fraction, ...]] = None

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows  # list[list[Fraction]], each of length ncols
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.red: list[Fraction] = []
        self.red_rhs = ZERO

    def set_cost(self, cost: Sequence[Fraction]) -> None:
        red = list(cost)
        red_rhs = ZERO
        for row, b, var in zip(self.rows, self.rhs, self.basis):
            cb = cost[var]
            if cb:
                for j, v in enumerate(row):
                    if v:
                        red[j] -= cb * v
                red_rhs -= cb * b
        self.red = red
        self.red_rhs = red_rhs

    def objective(self) -> Fraction:
        return -self.red_rhs

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [v * inv for v in prow]
            self.rows[r] = prow
            self.rhs[r] *= inv
        prhs = self.rhs[r]
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                self.rhs[i] -= f * prhs
        f = self.red[c]
        if f:
            for j in nz:
                self.red[j] -= f * prow[j]
            self.red_rhs -= f * prhs
        self.basis[r] = c

    def run(self, allowed: int) -> bool:
        """Maximise the current cost over columns ``< allowed``.  False means unbounded."""
        while True:
            # Bland: lowest-index improving column, then lowest-index leaving variable.
            enter = next((j for j in range(allowed) if self.red[j] > 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter)


def simplex(
    n: int,
    constraints: Sequence[tuple[Sequence[Fraction], Fraction, bool]],
    objective: Sequence[Fraction],
    maximize: bool = True,
) -> LpResult:
    """Optimise ``objective . x`` subject to ``(a, c, is_eq)`` rows meaning ``a.x + c >= 0`` (or ``== 0``).

    The returned value excludes any objective constant; callers add it.
    """
    n_ineq = sum(1 for _, _, eq in constraints if not eq)
    base = 2 * n + n_ineq
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[Optional[int]] = []
    slack = 2 * n
    for a, c, eq in constraints:
        row = [ZERO] * base
        for k, v in enumerate(a):
            if v:
                row[k] = v
                row[n + k] = -v
        b = -c
        if not eq:
            row[slack] = Fraction(-1)
            if b <= 0:
                row = [-v for v in row]
                b = -b
                basis.append(slack)
            else:
                basis.append(None)
            slack += 1
        else:
            if b < 0:
                row = [-v for v in row]
                b = -b
            basis.append(None)
        rows.append(row)
        rhs.append(b)

    n_art = sum(1 for v in basis if v is None)
    ncols = base + n_art
    art = base
    for i, row in enumerate(rows):
        row.extend([ZERO] * n_art)
        if basis[i] is None:
            row[art] = Fraction(1)
            basis[i] = art
            art += 1

    tab = _Tableau(rows, rhs, basis, ncols)

    if n_art:
        tab.set_cost([ZERO] * base + [Fraction(-1)] * n_art)
        tab.run(ncols)
        if tab.objective() < 0:
            return LpResult(LpStatus.INFEASIBLE)
        # Drive zero-level artificials out of the basis, dropping redundant rows.
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= base:
                j = next((j for j in range(base) if tab.rows[i][j]), None)
                if j is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1

    sign = 1 if maximize else -1
    cost = [ZERO] * ncols
    for k, v in enumerate(objective):
        cost[k] = sign * v
        cost[n + k] = -sign * v
    tab.set_cost(cost)
    if not tab.run(base):
        return LpResult(LpStatus.UNBOUNDED)

    values = [ZERO] * ncols
    for var, b in zip(tab.basis, tab.rhs):
        values[var] = b
    x = tuple(values[k] - values[n + k] for k in range(n))
    value = sum((o * xi for o, xi in zip(objective, x)), ZERO)
    return LpResult(LpStatus.OPTIMAL, value, x)
