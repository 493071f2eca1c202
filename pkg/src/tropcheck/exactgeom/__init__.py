"""Exact rational geometry: linear algebra, simplex LP, polyhedra, univariate roots."""

from tropcheck.exactgeom.linalg import (
    MatrixQ,
    SolutionSet,
    det,
    identity,
    inverse,
    lincomb,
    matmul,
    matrix,
    matvec,
    solve_affine,
    solve_linear,
    transpose,
)
from tropcheck.exactgeom.lp import LpResult, LpStatus
from tropcheck.exactgeom.polyhedron import (
    AffineHull,
    Constraint,
    NotFullDimensional,
    Polyhedron,
    Rel,
    affine_hull,
    canonicalize,
    interior_point,
    is_feasible,
    lp_solve,
    max_slack,
    membership,
    relative_interior_point,
)

__all__ = [
    "AffineHull",
    "Constraint",
    "LpResult",
    "LpStatus",
    "MatrixQ",
    "NotFullDimensional",
    "Polyhedron",
    "Rel",
    "SolutionSet",
    "affine_hull",
    "canonicalize",
    "det",
    "identity",
    "interior_point",
    "inverse",
    "is_feasible",
    "lincomb",
    "lp_solve",
    "matmul",
    "matrix",
    "matvec",
    "max_slack",
    "membership",
    "relative_interior_point",
    "solve_affine",
    "solve_linear",
    "transpose",
]
