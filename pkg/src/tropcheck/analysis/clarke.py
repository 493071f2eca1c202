"""Singularity of the convex hull of the differentials active at a point.

Three outcomes: a singular member was found (with exact weights, or an
isolating interval when the root is irrational), the whole hull is certified
nonsingular, or no singular member was found but the test is incomplete
(pairwise-only, which happens for n >= 3 with three or more distinct matrices).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from tropcheck.exactgeom import MatrixQ, det, lincomb, solve_linear
from tropcheck.exactgeom import univariate as up
from tropcheck.linear import Rational, qvec
from tropcheck.pieces import Decomposition, pieces_at

# 2^k - 1 faces are scanned by the complete n = 2 test.
MAX_HULL_MATRICES = 10


class ClarkeVerdict(str, Enum):
    CONTAINS_SINGULAR = "ContainsSingular"
    NONSINGULAR = "NonsingularCertified"
    UNKNOWN = "UnknownNoSingularFound"


@dataclass(frozen=True)
class ClarkeSet:
    point: tuple[Fraction, ...]
    piece_ids: tuple[int, ...]
    matrices: tuple[MatrixQ, ...]
    verdict: ClarkeVerdict
    # piece id -> weight, exact; only set when the singular member has rational weights
    weights: Optional[dict[int, Fraction]] = None
    # (id_a, id_b, lo, hi): det(t*A + (1-t)*B) vanishes for some t in (lo, hi]
    interval: Optional[tuple[int, int, Fraction, Fraction]] = None
    note: str = ""

    def witness_matrix(self) -> Optional[MatrixQ]:
        if self.weights is None:
            return None
        ids = list(self.weights)
        lookup = dict(zip(self.piece_ids, self.matrices))
        return lincomb([self.weights[i] for i in ids], [lookup[i] for i in ids])


def segment_det_poly(a: MatrixQ, b: MatrixQ) -> up.Poly:
    """``t -> det(t*A + (1-t)*B)`` as exact coefficients, via interpolation at n+1 nodes."""
    n = len(a)
    ts = [Fraction(i, n) for i in range(n + 1)] if n else [Fraction(0)]
    vals = [det(lincomb([t, 1 - t], [a, b])) for t in ts]
    return up.interpolate(ts, vals)


def segment_singular(a: MatrixQ, b: MatrixQ):
    """Decide whether some ``t in [0, 1]`` makes ``t*A + (1-t)*B`` singular.

    Returns None, ``("exact", t)`` or ``("interval", lo, hi)``.
    """
    zero, one = Fraction(0), Fraction(1)
    p = segment_det_poly(a, b)
    if not p:
        return ("exact", Fraction(1, 2))
    for t in (zero, one):
        if up.evaluate(p, t) == 0:
            return ("exact", t)
    if up.count_roots(p, zero, one) == 0:
        return None
    roots = up.rational_roots(p, zero, one)
    if roots:
        return ("exact", roots[0])
    lo, hi = up.isolate(p, zero, one)
    return ("interval", lo, hi)


def _quadratic_form(mats: Sequence[MatrixQ]) -> list[list[Fraction]]:
    """Symmetric Q with ``det(sum l_i A_i) = l^T Q l`` for 2x2 matrices."""
    k = len(mats)
    d = [det(m) for m in mats]
    q = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        q[i][i] = d[i]
        for j in range(i + 1, k):
            mixed = (det(lincomb([1, 1], [mats[i], mats[j]])) - d[i] - d[j]) / 2
            q[i][j] = q[j][i] = mixed
    return q


def _quad(q, lam) -> Fraction:
    return sum((lam[i] * q[i][j] * lam[j] for i in range(len(lam)) for j in range(len(lam))), Fraction(0))


def hull_det_range_2d(mats: Sequence[MatrixQ]):
    """Exact (min, argmin, max, argmax) of det over the convex hull of 2x2 matrices.

    Each face of the weight simplex is scanned for an interior critical point of
    the quadratic; faces whose critical system is singular are covered by their
    sub-faces.
    """
    q = _quadratic_form(mats)
    k = len(mats)
    best_lo = best_hi = None
    for size in range(1, k + 1):
        for face in itertools.combinations(range(k), size):
            s = len(face)
            # [Q_F  -1][l] = [0], sum(l) = 1
            rows = [[q[i][j] for j in face] + [Fraction(-1)] for i in face]
            rows.append([Fraction(1)] * s + [Fraction(0)])
            rhs = [Fraction(0)] * s + [Fraction(1)]
            sol = solve_linear(rows, rhs, s + 1)
            if not sol.unique:
                continue
            lam_f = sol.particular[:s]
            if any(v <= 0 for v in lam_f):
                continue
            lam = [Fraction(0)] * k
            for i, v in zip(face, lam_f):
                lam[i] = v
            val = _quad(q, lam)
            if best_lo is None or val < best_lo[0]:
                best_lo = (val, tuple(lam))
            if best_hi is None or val > best_hi[0]:
                best_hi = (val, tuple(lam))
    return best_lo[0], best_lo[1], best_hi[0], best_hi[1]


def clarke_matrices(mats: Sequence[MatrixQ], ids: Sequence[int], point=()) -> ClarkeSet:
    point = tuple(point)
    ids = tuple(ids)
    mats = tuple(mats)
    n = len(mats[0])

    def singular(weights: dict[int, Fraction], note="") -> ClarkeSet:
        return ClarkeSet(point, ids, mats, ClarkeVerdict.CONTAINS_SINGULAR, weights=weights, note=note)

    for pid, m in zip(ids, mats):
        if det(m) == 0:
            return singular({pid: Fraction(1)}, "singular differential")

    # identical matrices add nothing to the hull
    uniq: dict[MatrixQ, int] = {}
    for pid, m in zip(ids, mats):
        uniq.setdefault(m, pid)
    umats = list(uniq)
    uids = list(uniq.values())

    interval = None
    for (i, a), (j, b) in itertools.combinations(enumerate(umats), 2):
        hit = segment_singular(a, b)
        if hit is None:
            continue
        if hit[0] == "exact":
            t = hit[1]
            return singular({uids[i]: t, uids[j]: 1 - t}, "segment")
        interval = interval or (uids[i], uids[j], hit[1], hit[2])

    if interval is not None:
        return ClarkeSet(point, ids, mats, ClarkeVerdict.CONTAINS_SINGULAR, interval=interval,
                         note="segment root is irrational")
    if len(umats) <= 2 or n == 1:
        return ClarkeSet(point, ids, mats, ClarkeVerdict.NONSINGULAR)
    if n == 2:
        if len(umats) > MAX_HULL_MATRICES:
            return ClarkeSet(point, ids, mats, ClarkeVerdict.UNKNOWN,
                             note=f"more than {MAX_HULL_MATRICES} distinct matrices; pairwise test only")
        lo, lam_lo, hi, lam_hi = hull_det_range_2d(umats)
        if lo > 0 or hi < 0:
            return ClarkeSet(point, ids, mats, ClarkeVerdict.NONSINGULAR, note=f"det range [{lo}, {hi}]")
        return _hull_witness(point, ids, mats, uids, umats, lam_lo, lam_hi)
    return ClarkeSet(point, ids, mats, ClarkeVerdict.UNKNOWN, note="pairwise test only for n >= 3")


def _hull_witness(point, ids, mats, uids, umats, lam_lo, lam_hi) -> ClarkeSet:
    """Locate det = 0 on the segment between the hull's det-minimiser and det-maximiser."""
    def at(t):
        lam = [(1 - t) * a + t * b for a, b in zip(lam_lo, lam_hi)]
        return lam, det(lincomb(lam, umats))

    ts = [Fraction(0), Fraction(1, 2), Fraction(1)]
    p = up.interpolate(ts, [at(t)[1] for t in ts])
    roots = [Fraction(0)] if not p else up.rational_roots(p, Fraction(0), Fraction(1))
    if roots:
        lam = at(roots[0])[0]
        weights = {pid: w for pid, w in zip(uids, lam) if w}
        return ClarkeSet(point, ids, mats, ClarkeVerdict.CONTAINS_SINGULAR, weights=weights, note="hull")
    lo, hi = up.isolate(p, Fraction(0), Fraction(1))
    return ClarkeSet(point, ids, mats, ClarkeVerdict.CONTAINS_SINGULAR, note=(
        f"hull: det vanishes on the segment between weight vectors {[str(v) for v in lam_lo]} "
        f"and {[str(v) for v in lam_hi]} at a parameter in ({lo}, {hi}]"))


def clarke_at(d: Decomposition, x: Sequence[Rational]) -> ClarkeSet:
    if not d.map.square:
        raise ValueError("the Clarke test needs a square map")
    x = qvec(x)
    active = pieces_at(d, x)
    return clarke_matrices([p.matrix for p in active], [p.id for p in active], x)


def clarke_to_dict(c: ClarkeSet) -> dict:
    out = {
        "point": [str(v) for v in c.point],
        "pieces": list(c.piece_ids),
        "verdict": c.verdict.value,
    }
    if c.weights is not None:
        out["witness"] = {
            "pieces": list(c.weights),
            "weights": [str(w) for w in c.weights.values()],
            "det": str(det(c.witness_matrix())),
        }
    if c.interval is not None:
        a, b, lo, hi = c.interval
        out["interval"] = {"pieces": [a, b], "t_lo": str(lo), "t_hi": str(hi)}
    if c.note:
        out["note"] = c.note
    return out
