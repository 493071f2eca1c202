"""Enumeration of the affine pieces of a tropical map.

A piece is fixed by choosing, for every min-set of every coordinate, which form
attains the minimum.  The cell of a choice is cut out by ``other - chosen >= 0``
for the remaining forms of each set; choices whose cell has empty interior are
discarded as soon as they appear in the depth-first search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from tropcheck.exactgeom import (
    Constraint,
    MatrixQ,
    Polyhedron,
    Rel,
    canonicalize,
    det,
    interior_point,
    matvec,
    membership,
)
from tropcheck.linear import LinearForm, Rational, qvec
from tropcheck.syntax.forms import TropicalMap


@dataclass(frozen=True)
class LinearPiece:
    """``x -> matrix @ x + offset`` on a closed full-dimensional ``cell``.

    ``id`` is 1-based in enumeration order.  ``witness`` is a point strictly
    inside the cell.  ``jac`` is None for non-square maps.
    """

    id: int
    matrix: MatrixQ
    offset: tuple[Fraction, ...]
    cell: Polyhedron
    jac: Optional[Fraction]
    witness: tuple[Fraction, ...]
    selection: tuple[int, ...] = ()

    def __call__(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(a + b for a, b in zip(matvec(self.matrix, x), self.offset))

    def contains(self, x: Sequence[Fraction]) -> bool:
        return membership(self.cell, x)


@dataclass(frozen=True)
class Decomposition:
    map: TropicalMap
    pieces: tuple[LinearPiece, ...]

    @property
    def N(self) -> int:
        return len(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def piece(self, pid: int) -> LinearPiece:
        return self.pieces[pid - 1]


def _min_sets(f: TropicalMap):
    """``(coord, which, forms)`` for each min-set, smallest sets first."""
    sets = []
    for k, c in enumerate(f.coords):
        sets.append((k, 0, c.numer))
        sets.append((k, 1, c.denom))
    return sorted(sets, key=lambda s: len(s[2]))


def enumerate_pieces(f: TropicalMap) -> Decomposition:
    n = f.n
    sets = _min_sets(f)
    found: list[tuple[tuple[int, ...], Polyhedron]] = []

    def dfs(level: int, chosen: tuple[int, ...], cons: tuple[LinearForm, ...], witness):
        if level == len(sets):
            found.append((chosen, Polyhedron.from_forms(n, cons)))
            return
        forms = sets[level][2]
        for idx, pick in enumerate(forms):
            extra = tuple(g - pick for j, g in enumerate(forms) if j != idx)
            # The parent's interior point often certifies the child for free.
            if all(e(witness) > 0 for e in extra):
                w = witness
            else:
                w = interior_point(Polyhedron.from_forms(n, cons + extra))
                if w is None:
                    continue
            dfs(level + 1, chosen + (idx,), cons + extra, w)

    dfs(0, (), (), (Fraction(0),) * n)

    pieces: list[LinearPiece] = []
    seen = set()
    for chosen, cell in found:
        cell = canonicalize(cell)
        key = cell.key()
        if key in seen:
            continue
        seen.add(key)
        pick = {(sets[i][0], sets[i][1]): sets[i][2][j] for i, j in enumerate(chosen)}
        rows, offset = [], []
        for k in range(f.m):
            g = pick[(k, 0)] - pick[(k, 1)]
            rows.append(g.coeffs)
            offset.append(g.constant)
        mat = tuple(rows)
        jac = det(mat) if f.square else None
        # selection is reported per coordinate as (numer index, denom index)
        selection = tuple(
            next(j for i, j in enumerate(chosen) if sets[i][:2] == (k, w)) for k in range(f.m) for w in (0, 1)
        )
        pieces.append(
            LinearPiece(len(pieces) + 1, mat, tuple(offset), cell, jac, interior_point(cell), selection)
        )
    return Decomposition(f, tuple(pieces))


def pieces_at(d: Decomposition, x: Sequence[Rational]) -> list[LinearPiece]:
    x = qvec(x)
    if len(x) != d.map.n:
        raise ValueError(f"point has dimension {len(x)}, map has {d.map.n}")
    return [p for p in d.pieces if p.contains(x)]


def facets_of(p: LinearPiece) -> list[Polyhedron]:
    """The cell with each irredundant inequality in turn tightened to equality."""
    cons = p.cell.constraints
    return [
        Polyhedron(p.cell.dim, cons[:i] + (Constraint(c.form, Rel.EQ),) + cons[i + 1:])
        for i, c in enumerate(cons)
    ]


def piece_to_dict(p: LinearPiece, names: Sequence[str]) -> dict:
    return {
        "id": p.id,
        "matrix": [[str(v) for v in row] for row in p.matrix],
        "offset": [str(v) for v in p.offset],
        "jac": None if p.jac is None else str(p.jac),
        "constraints": [
            {"coeffs": [str(v) for v in c.form.coeffs], "constant": str(c.form.constant), "rel": c.rel.value,
             "text": c.format(names)}
            for c in p.cell.constraints
        ],
        "witness": [str(v) for v in p.witness],
    }


def decomposition_to_dict(d: Decomposition) -> dict:
    return {
        "map": d.map.name,
        "variables": list(d.map.variables),
        "N": d.N,
        "pieces": [piece_to_dict(p, d.map.variables) for p in d.pieces],
    }


def decomposition_to_json(d: Decomposition) -> str:
    return json.dumps(decomposition_to_dict(d), indent=2)
