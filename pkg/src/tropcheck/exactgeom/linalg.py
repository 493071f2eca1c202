"""Exact rational linear algebra on tuple-of-tuple matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from tropcheck.linear import Rational, qvec

MatrixQ = tuple  # tuple[tuple[Fraction, ...], ...]


def matrix(rows: Sequence[Sequence[Rational]]) -> MatrixQ:
    out = tuple(qvec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> MatrixQ:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def shape(m: MatrixQ) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: MatrixQ) -> MatrixQ:
    return tuple(zip(*m)) if m else ()


def matmul(a: MatrixQ, b: MatrixQ) -> MatrixQ:
    if shape(a)[1] != shape(b)[0]:
        raise ValueError("dimension mismatch in matmul")
    cols = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def matvec(a: MatrixQ, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if a and len(a[0]) != len(x):
        raise ValueError("dimension mismatch in matvec")
    return tuple(sum((p * q for p, q in zip(row, x)), Fraction(0)) for row in a)


def lincomb(weights: Sequence[Fraction], mats: Sequence[MatrixQ]) -> MatrixQ:
    rows, cols = shape(mats[0])
    return tuple(
        tuple(sum((w * m[i][j] for w, m in zip(weights, mats)), Fraction(0)) for j in range(cols))
        for i in range(rows)
    )


def det(m: MatrixQ) -> Fraction:
    """Determinant by Bareiss elimination on an integer-scaled copy."""
    n, k = shape(m)
    if n != k:
        raise ValueError(f"det of non-square {n}x{k} matrix")
    if n == 0:
        return Fraction(1)
    # Scale each row to integers; the scale factors are divided back out at the end.
    scale = 1
    a: list[list[int]] = []
    for row in m:
        d = math.lcm(*(e.denominator for e in row))
        scale *= d
        a.append([int(e * d) for e in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale)


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of ``A x = b``: ``particular + span(kernel)``, or empty when ``particular`` is None."""

    particular: Optional[tuple[Fraction, ...]]
    kernel: tuple[tuple[Fraction, ...], ...] = field(default=())

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.particular is not None and not self.kernel


def solve_linear(a: MatrixQ, b: Sequence[Fraction], ncols: Optional[int] = None) -> SolutionSet:
    """General ``A x = b`` over the rationals via reduced row echelon form."""
    rows = len(a)
    n = ncols if ncols is not None else shape(a)[1]
    if len(b) != rows:
        raise ValueError("right-hand side length does not match row count")
    t = [list(r) + [Fraction(v)] for r, v in zip(a, b)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, rows) if t[i][c] != 0), None)
        if p is None:
            continue
        t[r], t[p] = t[p], t[r]
        inv = 1 / t[r][c]
        t[r] = [v * inv for v in t[r]]
        for i in range(rows):
            if i != r and t[i][c] != 0:
                f = t[i][c]
                t[i] = [x - f * y for x, y in zip(t[i], t[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(t[i][n] != 0 for i in range(r, rows)):
        return SolutionSet(None)
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = t[i][n]
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -t[i][f]
        kernel.append(tuple(v))
    return SolutionSet(tuple(x), tuple(kernel))


def solve_affine(m: MatrixQ, c: Sequence[Fraction], y: Sequence[Fraction]) -> SolutionSet:
    """All ``x`` with ``M x + c = y`` for square ``M``."""
    n, k = shape(m)
    if n != k:
        raise ValueError("solve_affine expects a square matrix")
    if len(c) != n or len(y) != n:
        raise ValueError("dimension mismatch")
    return solve_linear(m, [yi - ci for yi, ci in zip(y, c)], n)


def inverse(m: MatrixQ) -> MatrixQ:
    n, k = shape(m)
    if n != k:
        raise ValueError("inverse of non-square matrix")
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        sol = solve_linear(m, e, n)
        if not sol.unique:
            raise ZeroDivisionError("matrix is singular")
        cols.append(sol.particular)
    return transpose(tuple(cols))
