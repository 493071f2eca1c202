"""Affine forms with exact rational coefficients.

A :class:`LinearForm` is ``x -> coeffs . x + constant``.  Everything else in the
package (normal forms, polyhedra, pieces) is assembled from these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction, str]
Point = tuple  # tuple[Fraction, ...]


def Q(value: Rational) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every decision downstream depends on exact signs.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def qvec(values: Iterable[Rational]) -> tuple[Fraction, ...]:
    return tuple(v if type(v) is Fraction else Q(v) for v in values)


def qstr(value: Fraction) -> str:
    return str(value)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True, slots=True)
class LinearForm:
    coeffs: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", qvec(self.coeffs))
        if type(self.constant) is not Fraction:
            object.__setattr__(self, "constant", Q(self.constant))

    @classmethod
    def zero(cls, n: int) -> "LinearForm":
        return cls((0,) * n, 0)

    @classmethod
    def const(cls, n: int, value: Rational) -> "LinearForm":
        return cls((0,) * n, value)

    @classmethod
    def var(cls, n: int, index: int, scale: Rational = 1) -> "LinearForm":
        coeffs = [Fraction(0)] * n
        coeffs[index] = Q(scale)
        return cls(tuple(coeffs), 0)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        if len(x) != len(self.coeffs):
            raise ValueError(f"point has dimension {len(x)}, form expects {len(self.coeffs)}")
        return dot(self.coeffs, x) + self.constant

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return LinearForm(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            self.constant + other.constant,
        )

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-a for a in self.coeffs), -self.constant)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scale(self, factor: Rational) -> "LinearForm":
        k = Q(factor)
        return LinearForm(tuple(k * a for a in self.coeffs), k * self.constant)

    def primitive(self) -> "LinearForm":
        """Positive multiple with coprime integer entries (used as a canonical key)."""
        entries = self.coeffs + (self.constant,)
        if not any(entries):
            return self
        den = 1
        for e in entries:
            den = den * e.denominator // math.gcd(den, e.denominator)
        ints = [int(e * den) for e in entries]
        g = math.gcd(*ints)
        return LinearForm(tuple(Fraction(v, g) for v in ints[:-1]), Fraction(ints[-1], g))

    def substitute(self, base: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]) -> "LinearForm":
        """Pull back along ``w -> base + sum_j w_j * basis[j]``."""
        return LinearForm(tuple(dot(self.coeffs, b) for b in basis), self(base))

    def format(self, names: Sequence[str]) -> str:
        parts: list[str] = []
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append(("- " if c < 0 else "+ ") + body)
        if self.constant != 0 or not parts:
            parts.append(("- " if self.constant < 0 else "+ ") + str(abs(self.constant)))
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self) -> str:
        return self.format([f"x{i}" for i in range(self.dim)])

