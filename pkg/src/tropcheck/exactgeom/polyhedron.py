"""H-represented polyhedra and the LP-backed tests built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from tropcheck.linear import LinearForm, Rational, qvec
from tropcheck.exactgeom.linalg import SolutionSet, solve_linear
from tropcheck.exactgeom.lp import LpResult, LpStatus, simplex

ONE = Fraction(1)


class Rel(str, Enum):
    GE = ">="
    EQ = "=="


class NotFullDimensional(ValueError):
    """Raised by :func:`canonicalize` when the polyhedron has empty interior."""


@dataclass(frozen=True)
class Constraint:
    form: LinearForm
    rel: Rel = Rel.GE

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.form(x)
        return v == 0 if self.rel is Rel.EQ else v >= 0

    def format(self, names: Sequence[str]) -> str:
        return f"{self.form.format(names)} {'>=' if self.rel is Rel.GE else '=='} 0"


@dataclass(frozen=True)
class Polyhedron:
    """``{x in Q^n : form(x) rel 0 for every constraint}``."""

    dim: int
    constraints: tuple[Constraint, ...] = field(default=())

    def __post_init__(self):
        cons = tuple(c if isinstance(c, Constraint) else Constraint(c) for c in self.constraints)
        for c in cons:
            if c.form.dim != self.dim:
                raise ValueError(f"constraint of dimension {c.form.dim} in a {self.dim}-dimensional polyhedron")
        object.__setattr__(self, "constraints", cons)

    @classmethod
    def from_forms(cls, dim: int, ge: Sequence[LinearForm] = (), eq: Sequence[LinearForm] = ()) -> "Polyhedron":
        return cls(dim, tuple(Constraint(f) for f in ge) + tuple(Constraint(f, Rel.EQ) for f in eq))

    @property
    def inequalities(self) -> tuple[LinearForm, ...]:
        return tuple(c.form for c in self.constraints if c.rel is Rel.GE)

    @property
    def equalities(self) -> tuple[LinearForm, ...]:
        return tuple(c.form for c in self.constraints if c.rel is Rel.EQ)

    def __contains__(self, x) -> bool:
        return membership(self, x)

    def __and__(self, other: "Polyhedron") -> "Polyhedron":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return Polyhedron(self.dim, self.constraints + other.constraints)

    def add(self, *constraints: Constraint | LinearForm) -> "Polyhedron":
        return Polyhedron(self.dim, self.constraints + tuple(constraints))

    def key(self) -> frozenset:
        """Scale-invariant identity of the constraint set."""
        return frozenset((c.form.primitive(), c.rel) for c in self.constraints)

    def strictly_inside(self, x: Sequence[Fraction]) -> bool:
        return not self.equalities and all(f(x) > 0 for f in self.inequalities)


def membership(p: Polyhedron, x: Sequence[Rational]) -> bool:
    x = qvec(x)
    if len(x) != p.dim:
        raise ValueError(f"point has dimension {len(x)}, polyhedron has {p.dim}")
    return all(c.holds(x) for c in p.constraints)


def _rows(p: Polyhedron):
    return [(c.form.coeffs, c.form.constant, c.rel is Rel.EQ) for c in p.constraints]


def lp_solve(objective: LinearForm, p: Polyhedron, sense: str = "min") -> LpResult:
    """Exact optimum of an affine objective over ``p``."""
    if objective.dim != p.dim:
        raise ValueError("objective and polyhedron dimensions differ")
    if sense not in ("min", "max"):
        raise ValueError("sense must be 'min' or 'max'")
    res = simplex(p.dim, _rows(p), objective.coeffs, maximize=(sense == "max"))
    if res.status is LpStatus.OPTIMAL:
        return LpResult(res.status, res.value + objective.constant, res.witness)
    return res


def is_feasible(p: Polyhedron) -> bool:
    if not p.constraints:
        return True
    return simplex(p.dim, _rows(p), (Fraction(0),) * p.dim).status is LpStatus.OPTIMAL


def max_slack(p: Polyhedron) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Maximise ``s`` subject to ``form(x) >= s`` for every inequality and ``s <= 1``."""
    n = p.dim
    rows = [(f.coeffs + (Fraction(-1),), f.constant, False) for f in p.inequalities]
    rows.append(((Fraction(0),) * n + (Fraction(-1),), ONE, False))
    res = simplex(n + 1, rows, (Fraction(0),) * n + (ONE,), maximize=True)
    assert res.status is LpStatus.OPTIMAL, res
    return res.value, res.witness[:n]


def interior_point(p: Polyhedron) -> Optional[tuple[Fraction, ...]]:
    """A point strictly inside every inequality, or None when the interior is empty.

    Polyhedra carrying equality constraints have empty interior by convention.
    """
    if p.equalities:
        return None
    if not p.constraints:
        return (Fraction(0),) * p.dim
    slack, x = max_slack(p)
    return x if slack > 0 else None


def canonicalize(p: Polyhedron) -> Polyhedron:
    """Drop every inequality implied by the others, normalising the survivors.

    Each surviving constraint is scaled to coprime integers, so two canonical
    descriptions of the same full-dimensional polyhedron agree up to order.
    """
    if interior_point(p) is None:
        raise NotFullDimensional("polyhedron has empty interior")
    kept: list[LinearForm] = []
    seen = set()
    for f in p.inequalities:
        g = f.primitive()
        if g not in seen:
            seen.add(g)
            kept.append(g)
    i = 0
    while i < len(kept):
        rest = Polyhedron.from_forms(p.dim, kept[:i] + kept[i + 1:])
        res = lp_solve(kept[i], rest, "min")
        if res.status is LpStatus.OPTIMAL and res.value >= 0:
            del kept[i]
        else:
            i += 1
    return Polyhedron.from_forms(p.dim, kept)


@dataclass(frozen=True)
class AffineHull:
    """``{base + sum_j w_j basis[j]}`` together with the indices of implicit equalities."""

    base: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    implicit: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def affine_hull(p: Polyhedron) -> Optional[AffineHull]:
    """Affine hull of a nonempty polyhedron, or None if it is empty."""
    if not is_feasible(p):
        return None
    eqs = list(p.equalities)
    implicit = []
    for idx, c in enumerate(p.constraints):
        if c.rel is Rel.GE:
            res = lp_solve(c.form, p, "max")
            if res.status is LpStatus.OPTIMAL and res.value == 0:
                implicit.append(idx)
                eqs.append(c.form)
    if not eqs:
        basis = tuple(tuple(Fraction(int(i == j)) for j in range(p.dim)) for i in range(p.dim))
        return AffineHull((Fraction(0),) * p.dim, basis, ())
    sol: SolutionSet = solve_linear([f.coeffs for f in eqs], [-f.constant for f in eqs], p.dim)
    assert sol.consistent
    return AffineHull(sol.particular, sol.kernel, tuple(implicit))


def relative_interior_point(p: Polyhedron) -> Optional[tuple[Fraction, ...]]:
    """A point of ``p`` strictly satisfying every inequality that is not an implicit equality."""
    hull = affine_hull(p)
    if hull is None:
        return None
    if hull.dim == 0:
        return hull.base
    pulled = [
        c.form.substitute(hull.base, hull.basis)
        for i, c in enumerate(p.constraints)
        if c.rel is Rel.GE and i not in hull.implicit
    ]
    w = interior_point(Polyhedron.from_forms(hull.dim, pulled))
    assert w is not None
    return tuple(
        b + sum((wj * vec[k] for wj, vec in zip(w, hull.basis)), Fraction(0))
        for k, b in enumerate(hull.base)
    )
