"""Jacobian screening, regular values, fibres, degree and the isomorphism decision."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from tropcheck.exactgeom import (
    Constraint,
    Polyhedron,
    Rel,
    inverse,
    is_feasible,
    matvec,
    solve_affine,
)
from tropcheck.linear import LinearForm, Rational, qvec
from tropcheck.pieces import Decomposition, LinearPiece, enumerate_pieces, facets_of, pieces_at
from tropcheck.syntax.forms import TropicalMap

log = logging.getLogger(__name__)

DEFAULT_RETRIES = 32
SAMPLE_BOX = 100


class Verdict(str, Enum):
    ISOMORPHISM = "Isomorphism"
    NOT_ISOMORPHISM = "NotIsomorphism"
    UNKNOWN = "Unknown"


class Reason(str, Enum):
    ZERO_JACOBIAN = "ZeroJacobian"
    MIXED_SIGNS = "MixedSigns"
    MULTIPLE_PREIMAGES = "MultiplePreimages"
    SINGLETON_PREIMAGE = "SingletonPreimage"
    RETRIES_EXHAUSTED = "RetriesExhausted"


class RetriesExhausted(RuntimeError):
    def __init__(self, retries: int, piece_id: int, facet: int, y0):
        super().__init__(
            f"no certified regular value after {retries} attempts; last failure: "
            f"y0={[str(v) for v in y0]} lies on the image of facet {facet} of piece {piece_id}"
        )
        self.piece_id = piece_id
        self.facet = facet
        self.y0 = y0


class NotInvertible(ValueError):
    pass


def _square(d: Decomposition) -> None:
    if not d.map.square:
        raise ValueError(f"map {d.map.name} is {d.map.n} -> {d.map.m}; a square map is required")


# -- sign screening -----------------------------------------------------------

@dataclass(frozen=True)
class SignSummary:
    pos: int
    neg: int
    zero: int
    signs: dict[int, int]
    zero_piece: Optional[int] = None
    mixed_pair: Optional[tuple[int, int]] = None

    @property
    def uniform(self) -> bool:
        """All Jacobians nonzero and of one sign."""
        return self.zero == 0 and (self.pos == 0 or self.neg == 0)

    @property
    def sign(self) -> int:
        return 1 if self.uniform and self.pos else (-1 if self.uniform else 0)


def jacobian_signs(d: Decomposition) -> SignSummary:
    _square(d)
    signs = {p.id: (p.jac > 0) - (p.jac < 0) for p in d.pieces}
    zero_piece = next((i for i, s in signs.items() if s == 0), None)
    first_pos = next((i for i, s in signs.items() if s > 0), None)
    first_neg = next((i for i, s in signs.items() if s < 0), None)
    mixed = (first_pos, first_neg) if first_pos is not None and first_neg is not None else None
    vals = list(signs.values())
    return SignSummary(vals.count(1), vals.count(-1), vals.count(0), signs, zero_piece, mixed)


# -- regular values -----------------------------------------------------------

@dataclass(frozen=True)
class RegularValueCertificate:
    y0: tuple[Fraction, ...]
    checked_facets: int
    source_point: tuple[Fraction, ...]
    attempts: int = 1


def facet_image_hits(d: Decomposition, y: Sequence[Fraction]) -> Optional[tuple[int, int]]:
    """First ``(piece id, facet index)`` whose facet's image contains ``y``, else None.

    Each test is the LP feasibility of ``{x in facet : M x + c = y}``.
    """
    for p in d.pieces:
        for k, facet in enumerate(facets_of(p)):
            fibre = [
                Constraint(LinearForm(row, c - yi), Rel.EQ)
                for row, c, yi in zip(p.matrix, p.offset, y)
            ]
            if is_feasible(facet.add(*fibre)):
                return p.id, k
    return None


def is_regular_value(d: Decomposition, y: Sequence[Rational]) -> bool:
    return facet_image_hits(d, qvec(y)) is None


def _sample_point(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    # integer box plus a small perturbation with a random denominator
    return tuple(
        Fraction(rng.randint(-SAMPLE_BOX, SAMPLE_BOX)) + Fraction(rng.randint(-999, 999), rng.randint(1000, 9999))
        for _ in range(n)
    )


def _snap_to_interior(d: Decomposition, x: tuple[Fraction, ...]) -> tuple[tuple[Fraction, ...], LinearPiece]:
    piece = pieces_at(d, x)[0]
    if not piece.cell.strictly_inside(x):
        # midpoint of a closed-cell point and an interior point is interior
        x = tuple((a + b) / 2 for a, b in zip(x, piece.witness))
    return x, piece


def find_regular_value(
    f: TropicalMap,
    d: Decomposition,
    seed: int = 0,
    retries: int = DEFAULT_RETRIES,
    rng: Optional[random.Random] = None,
) -> RegularValueCertificate:
    _square(d)
    rng = rng or random.Random(seed)
    facets = sum(len(p.cell.constraints) for p in d.pieces)
    last = None
    for attempt in range(1, retries + 1):
        x0, piece = _snap_to_interior(d, _sample_point(rng, f.n))
        y0 = piece(x0)
        hit = facet_image_hits(d, y0)
        if hit is None:
            return RegularValueCertificate(y0, facets, x0, attempt)
        log.debug("attempt %d: %s not regular (piece %d facet %d)", attempt, y0, *hit)
        last = (hit, y0)
    (pid, k), y0 = last
    raise RetriesExhausted(retries, pid, k, y0)


# -- fibres and degree --------------------------------------------------------

@dataclass
class Fibre:
    """Preimage of a point: isolated points with the pieces they were found in,
    plus the ids of singular pieces whose solution set meets their cell."""

    points: list[tuple[tuple[Fraction, ...], tuple[int, ...]]] = field(default_factory=list)
    degenerate: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def preimage(f: TropicalMap, d: Decomposition, y: Sequence[Rational]) -> Fibre:
    _square(d)
    y = qvec(y)
    if len(y) != f.n:
        raise ValueError(f"point has dimension {len(y)}, map has {f.n}")
    found: dict[tuple[Fraction, ...], list[int]] = {}
    fibre = Fibre()
    for p in d.pieces:
        if p.jac != 0:
            x = solve_affine(p.matrix, p.offset, y).particular
            if p.contains(x):
                found.setdefault(x, []).append(p.id)
        else:
            eqs = [Constraint(LinearForm(row, c - yi), Rel.EQ) for row, c, yi in zip(p.matrix, p.offset, y)]
            if is_feasible(p.cell.add(*eqs)):
                fibre.degenerate.append(p.id)
    fibre.points = [(x, tuple(ids)) for x, ids in found.items()]
    return fibre


def degree(f: TropicalMap, d: Decomposition, cert: RegularValueCertificate) -> int:
    """Signed count of the fibre over a certified regular value."""
    fibre = preimage(f, d, cert.y0)
    if fibre.degenerate:
        raise ValueError("degenerate fibre: some singular piece meets the preimage")
    total = 0
    for x, ids in fibre:
        if len(ids) != 1:
            raise ValueError(f"preimage {x} lies in several cells; the value is not regular")
        jac = d.piece(ids[0]).jac
        total += (jac > 0) - (jac < 0)
    return total


# -- inverse ------------------------------------------------------------------

def invert_pieces(d: Decomposition) -> tuple[LinearPiece, ...]:
    """Transport every piece through its own affine map (all pieces must be invertible)."""
    out = []
    for p in d.pieces:
        inv = inverse(p.matrix)
        off = tuple(-v for v in matvec(inv, p.offset))
        # g.x + k >= 0 with x = inv.y + off
        cons = tuple(
            Constraint(LinearForm(matvec(tuple(zip(*inv)), c.form.coeffs), c.form(off)), c.rel)
            for c in p.cell.constraints
        )
        out.append(LinearPiece(p.id, inv, off, Polyhedron(p.cell.dim, cons), 1 / p.jac, p(p.witness)))
    return tuple(out)


def eval_piecewise(pieces: Sequence[LinearPiece], y: Sequence[Rational]) -> tuple[Fraction, ...]:
    y = qvec(y)
    for p in pieces:
        if p.contains(y):
            return p(y)
    raise ValueError(f"{[str(v) for v in y]} is not covered by any piece")


# -- reports ------------------------------------------------------------------

@dataclass
class AnalysisReport:
    verdict: Verdict
    signs: SignSummary
    reason: Optional[Reason] = None
    reason_pieces: tuple[int, ...] = ()
    degree: Optional[int] = None
    regular_value: Optional[RegularValueCertificate] = None
    witnesses: list[tuple[Fraction, ...]] = field(default_factory=list)
    inverse: Optional[tuple[LinearPiece, ...]] = None
    n_pieces: int = 0
    fast_path: Optional[Verdict] = None
    diagnostics: str = ""

    def check(self) -> None:
        """Internal consistency of the report; raises AssertionError on violation."""
        if self.verdict is Verdict.ISOMORPHISM:
            assert self.signs.uniform, "isomorphism with non-uniform Jacobian signs"
            assert self.degree == self.signs.sign, "degree does not match the Jacobian sign"
        if self.reason is Reason.MULTIPLE_PREIMAGES:
            assert len(set(self.witnesses)) == len(self.witnesses) >= 2


def decide_isomorphism(
    f: TropicalMap,
    seed: int = 0,
    retries: int = DEFAULT_RETRIES,
    decomposition: Optional[Decomposition] = None,
    with_inverse: bool = True,
) -> AnalysisReport:
    if not f.square:
        raise ValueError(f"map {f.name} is {f.n} -> {f.m}; isomorphism analysis needs m = n")
    d = decomposition or enumerate_pieces(f)
    signs = jacobian_signs(d)
    report = AnalysisReport(Verdict.UNKNOWN, signs, n_pieces=d.N)
    if signs.zero_piece is not None:
        report.verdict, report.reason = Verdict.NOT_ISOMORPHISM, Reason.ZERO_JACOBIAN
        report.reason_pieces = (signs.zero_piece,)
        return report
    if signs.mixed_pair is not None:
        report.verdict, report.reason = Verdict.NOT_ISOMORPHISM, Reason.MIXED_SIGNS
        report.reason_pieces = signs.mixed_pair
        return report
    try:
        cert = find_regular_value(f, d, seed=seed, retries=retries)
    except RetriesExhausted as exc:
        report.reason = Reason.RETRIES_EXHAUSTED
        report.diagnostics = str(exc)
        return report
    fibre = preimage(f, d, cert.y0)
    report.regular_value = cert
    report.witnesses = [x for x, _ in fibre]
    report.degree = degree(f, d, cert)
    if len(fibre) == 1:
        report.verdict, report.reason = Verdict.ISOMORPHISM, Reason.SINGLETON_PREIMAGE
        if with_inverse:
            report.inverse = invert_pieces(d)
    else:
        report.verdict, report.reason = Verdict.NOT_ISOMORPHISM, Reason.MULTIPLE_PREIMAGES
    report.check()
    return report


def invert(f: TropicalMap, d: Optional[Decomposition] = None, seed: int = 0) -> tuple[LinearPiece, ...]:
    """Piecewise-affine inverse of an isomorphism; raises NotInvertible otherwise."""
    d = d or enumerate_pieces(f)
    report = decide_isomorphism(f, seed=seed, decomposition=d)
    if report.verdict is not Verdict.ISOMORPHISM:
        raise NotInvertible(f"map {f.name} is not an isomorphism ({report.verdict.value})")
    return report.inverse


def plane_fast_path(f: TropicalMap, d: Optional[Decomposition] = None) -> Optional[Verdict]:
    """Planar maps with concave coordinates are isomorphisms as soon as all
    Jacobians share a nonzero sign.  None when not applicable."""
    if f.n != 2 or f.m != 2 or not f.concave:
        return None
    d = d or enumerate_pieces(f)
    return Verdict.ISOMORPHISM if jacobian_signs(d).uniform else None
