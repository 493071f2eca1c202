import random
from fractions import Fraction

import pytest

from tropcheck.exactgeom.univariate import (
    count_roots,
    derivative,
    divmod_poly,
    evaluate,
    interpolate,
    isolate,
    rational_roots,
    squarefree,
    trim,
)


def from_roots(*roots):
    p = (Fraction(1),)
    for r in roots:
        p = trim([Fraction(0)] + list(p))  # multiply by t
        p = trim([a - r * b for a, b in zip(p, list(p[1:]) + [Fraction(0)])])
    return p


def test_from_roots_helper():
    p = from_roots(Fraction(1), Fraction(2))
    assert p == (2, -3, 1)


def test_evaluate_and_derivative():
    p = (Fraction(1), Fraction(0), Fraction(3))  # 1 + 3t^2
    assert evaluate(p, Fraction(2)) == 13
    assert derivative(p) == (0, 6)


def test_divmod():
    a = from_roots(1, 2, 3)
    q, r = divmod_poly(a, from_roots(2))
    assert r == () and q == from_roots(1, 3)
    with pytest.raises(ZeroDivisionError):
        divmod_poly(a, ())


def test_squarefree_removes_repeats():
    p = squarefree(from_roots(1, 1, 2))
    assert p[-1] * from_roots(1, 2)[-1] != 0
    assert trim([c / p[-1] for c in p]) == from_roots(1, 2)


def test_count_roots_half_open():
    p = from_roots(Fraction(1, 3), Fraction(1, 2), 2)
    assert count_roots(p, Fraction(0), Fraction(1)) == 2
    assert count_roots(p, Fraction(1, 3), Fraction(1)) == 1
    assert count_roots(p, Fraction(0), Fraction(1, 3)) == 1
    assert count_roots((Fraction(1), Fraction(0), Fraction(1)), Fraction(-10), Fraction(10)) == 0


def test_count_roots_repeated():
    assert count_roots(from_roots(Fraction(1, 2), Fraction(1, 2)), Fraction(0), Fraction(1)) == 1


def test_rational_roots():
    p = from_roots(Fraction(-2, 3), Fraction(1, 4), Fraction(5))
    assert rational_roots(p, Fraction(0), Fraction(1)) == [Fraction(1, 4)]
    assert rational_roots(p, Fraction(-10), Fraction(10)) == [Fraction(-2, 3), Fraction(1, 4), Fraction(5)]
    # t^2 - 2 has no rational roots
    assert rational_roots((Fraction(-2), Fraction(0), Fraction(1)), Fraction(0), Fraction(2)) == []
    assert rational_roots(from_roots(0, 1), Fraction(0), Fraction(1)) == [0, 1]


def test_isolate_irrational_root():
    p = (Fraction(-2), Fraction(0), Fraction(1))
    lo, hi = isolate(p, Fraction(0), Fraction(2))
    assert lo < hi and hi - lo <= Fraction(1, 2**20)
    assert lo * lo < 2 <= hi * hi


def test_interpolate_recovers_polynomial():
    rng = random.Random(1)
    for _ in range(50):
        p = trim([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 5))])
        ts = [Fraction(i) for i in range(len(p) + 1)]
        assert interpolate(ts, [evaluate(p, t) for t in ts]) == p
