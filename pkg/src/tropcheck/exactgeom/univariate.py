"""Dense univariate polynomials over Q: Sturm root counting and rational roots.

Coefficients are stored lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

Poly = tuple  # tuple[Fraction, ...]


def trim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def degree(p: Poly) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def evaluate(p: Poly, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def derivative(p: Poly) -> Poly:
    return trim([i * c for i, c in enumerate(p)][1:])


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a = list(trim(a))
    return trim(q), trim(a)


def gcd_poly(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return tuple(c / a[-1] for c in a) if a else a


def squarefree(p: Poly) -> Poly:
    g = gcd_poly(p, derivative(p))
    return divmod_poly(p, g)[0] if degree(g) > 0 else p


def interpolate(ts: Sequence[Fraction], values: Sequence[Fraction]) -> Poly:
    """Coefficients of the unique polynomial of degree < len(ts) through the samples."""
    coeffs = [Fraction(0)] * len(ts)
    for i, (ti, vi) in enumerate(zip(ts, values)):
        if vi == 0:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, tj in enumerate(ts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= tj * basis[k + 1]
            denom *= ti - tj
        for k, c in enumerate(basis):
            coeffs[k] += vi * c / denom
    return trim(coeffs)


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, derivative(p)]
    while chain[-1]:
        r = divmod_poly(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(tuple(-c for c in r))
    return chain


def _variations(chain: list[Poly], t: Fraction) -> int:
    signs = [v for v in (evaluate(q, t) for q in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    if not p:
        raise ValueError("zero polynomial has infinitely many roots")
    if degree(p) == 0:
        return 0
    chain = sturm_chain(squarefree(p))
    return _variations(chain, lo) - _variations(chain, hi)


def rational_roots(p: Poly, lo: Fraction, hi: Fraction, max_size: int = 10**12) -> Optional[list[Fraction]]:
    """Rational roots in ``[lo, hi]``, or None if the coefficients are too large to search.

    Uses the rational root test on the primitive integer square-free part.
    """
    q = squarefree(p)
    if degree(q) <= 0:
        return []
    den = math.lcm(*(c.denominator for c in q))
    ints = [int(c * den) for c in q]
    # strip factors of t
    roots: list[Fraction] = []
    while ints and ints[0] == 0:
        ints.pop(0)
        roots = [Fraction(0)]
    if len(ints) > 1:
        a0, an = abs(ints[0]), abs(ints[-1])
        if a0 > max_size or an > max_size:
            return None
        for num in _divisors(a0):
            for d in _divisors(an):
                for s in (1, -1):
                    r = Fraction(s * num, d)
                    if r not in roots and evaluate(q, r) == 0:
                        roots.append(r)
    return sorted(r for r in roots if lo <= r <= hi)


def isolate(p: Poly, lo: Fraction, hi: Fraction, width: Fraction = Fraction(1, 2**20)) -> tuple[Fraction, Fraction]:
    """Shrink ``(lo, hi]`` by bisection while it still contains a root."""
    chain = sturm_chain(squarefree(p))
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _variations(chain, lo) - _variations(chain, mid) > 0:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]
