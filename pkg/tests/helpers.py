"""Random map generators and brute-force oracles shared by the test modules.

The oracles deliberately avoid the package's LP and piece machinery.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from pathlib import Path

from tropcheck.linear import LinearForm
from tropcheck.syntax import Lin, Min, Neg, Sum, TropicalMap, normalize, parse_map

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "tropcheck" / "fixtures"
FIXTURE_NAMES = ["identity", "example1", "g2d", "h3d", "example2"]


def load_fixture(name: str, **params) -> TropicalMap:
    return parse_map((FIXTURES / f"{name}.trop").read_text(), params)


def rand_q(rng: random.Random, lo=-5, hi=5, den=7) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def rand_point(rng: random.Random, n: int, box=10) -> tuple[Fraction, ...]:
    return tuple(rand_q(rng, -box, box, 97) for _ in range(n))


def rand_form(rng: random.Random, n: int, coef=3, const=3) -> LinearForm:
    return LinearForm(tuple(rng.randint(-coef, coef) for _ in range(n)), rng.randint(-const, const))


def rand_expr(rng: random.Random, n: int, depth: int):
    if depth == 0 or rng.random() < 0.25:
        return Lin(LinearForm(tuple(rand_q(rng, -2, 2, 3) for _ in range(n)), rand_q(rng, -2, 2, 3)))
    kind = rng.choice(["min", "min", "sum", "neg"])
    if kind == "min":
        return Min(tuple(rand_expr(rng, n, depth - 1) for _ in range(rng.randint(1, 3))))
    if kind == "sum":
        return Sum(rand_expr(rng, n, depth - 1), rand_expr(rng, n, depth - 1))
    return Neg(rand_expr(rng, n, depth - 1))


def random_rational_map(rng: random.Random, n: int, max_forms=3, name="rand") -> TropicalMap:
    """Each coordinate is ``min(A) - min(B)`` with small random integer forms."""
    coords = []
    for _ in range(n):
        numer = Min(tuple(Lin(rand_form(rng, n)) for _ in range(rng.randint(1, max_forms))))
        denom = Min(tuple(Lin(rand_form(rng, n)) for _ in range(rng.randint(1, 2))))
        coords.append(normalize(Sum(numer, Neg(denom)), n))
    return TropicalMap(name, tuple(f"x{i}" for i in range(n)), tuple(coords))


def random_concave_map(rng: random.Random, n=2, max_forms=4, name="concave") -> TropicalMap:
    coords = tuple(
        normalize(Min(tuple(Lin(rand_form(rng, n)) for _ in range(rng.randint(1, max_forms)))), n)
        for _ in range(n)
    )
    return TropicalMap(name, tuple(f"x{i}" for i in range(n)), coords)


def leibniz_det(m) -> Fraction:
    """Permutation-expansion determinant."""
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(1)
        for i, j in enumerate(perm):
            term *= m[i][j]
        total += -term if inv % 2 else term
    return total


def cramer_solve(m, b):
    d = leibniz_det(m)
    n = len(m)
    return tuple(
        leibniz_det([[b[i] if j == k else m[i][j] for j in range(n)] for i in range(n)]) / d for k in range(n)
    )


def brute_force_preimage(f: TropicalMap, y) -> set:
    """All x with f(x) = y found by trying every choice of minimising forms.

    For each choice the affine system is solved by Cramer's rule and the choice
    is kept only if the chosen forms really attain the minima at the solution.
    Only choices with a nonsingular system are considered.
    """
    sets = []
    for c in f.coords:
        sets.append(c.numer)
        sets.append(c.denom)
    out = set()
    for choice in itertools.product(*[range(len(s)) for s in sets]):
        rows, rhs = [], []
        for k in range(f.m):
            a = sets[2 * k][choice[2 * k]]
            b = sets[2 * k + 1][choice[2 * k + 1]]
            g = a - b
            rows.append(g.coeffs)
            rhs.append(y[k] - g.constant)
        if leibniz_det(rows) == 0:
            continue
        x = cramer_solve(rows, rhs)
        ok = all(
            s[j](x) == min(h(x) for h in s)
            for s, j in zip(sets, choice)
        )
        if ok:
            out.add(x)
    return out


def lp_vertex_oracle_2d(obj, cons, sense):
    """Optimum of a bounded 2-variable LP by enumerating pairwise line intersections.

    ``cons`` are LinearForms meaning ``form >= 0``.  Returns None if infeasible,
    and assumes the optimum (if any) is attained at a vertex.
    """
    best = None
    for a, b in itertools.combinations(cons, 2):
        m = [list(a.coeffs), list(b.coeffs)]
        if leibniz_det(m) == 0:
            continue
        x = cramer_solve(m, [-a.constant, -b.constant])
        if all(c(x) >= 0 for c in cons):
            v = obj(x)
            if best is None or (v < best if sense == "min" else v > best):
                best = v
    return best
