"""Expression trees over min/+/- and their ``min(A) - min(B)`` normal forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from tropcheck.exactgeom.polyhedron import Polyhedron, interior_point
from tropcheck.linear import LinearForm, Rational, qvec


# -- expression tree ----------------------------------------------------------

@dataclass(frozen=True)
class Lin:
    form: LinearForm


@dataclass(frozen=True)
class Min:
    children: tuple["Expr", ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("min() needs at least one argument")


@dataclass(frozen=True)
class Sum:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    child: "Expr"


Expr = Union[Lin, Min, Sum, Neg]


def make_max(children: Sequence[Expr]) -> Expr:
    """``max(a, b, ...) = -min(-a, -b, ...)``."""
    return Neg(Min(tuple(negate(c) for c in children)))


def negate(e: Expr) -> Expr:
    if isinstance(e, Lin):
        return Lin(-e.form)
    if isinstance(e, Neg):
        return e.child
    return Neg(e)


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Lin) and isinstance(b, Lin):
        return Lin(a.form + b.form)
    return Sum(a, b)


def scale(e: Expr, k: Fraction) -> Expr:
    """Multiply by a rational constant; negative factors turn min into max."""
    if k == 0:
        return Lin(LinearForm.zero(expr_dim(e)))
    if k < 0:
        return negate(scale(e, -k))
    if isinstance(e, Lin):
        return Lin(e.form.scale(k))
    if isinstance(e, Min):
        return Min(tuple(scale(c, k) for c in e.children))
    if isinstance(e, Sum):
        return Sum(scale(e.left, k), scale(e.right, k))
    return Neg(scale(e.child, k))


def expr_dim(e: Expr) -> int:
    while not isinstance(e, Lin):
        e = e.children[0] if isinstance(e, Min) else (e.left if isinstance(e, Sum) else e.child)
    return e.form.dim


def eval_tree(e: Expr, x: Sequence[Fraction]) -> Fraction:
    """Direct evaluation of the raw tree (independent of normalization)."""
    if isinstance(e, Lin):
        return e.form(x)
    if isinstance(e, Min):
        return min(eval_tree(c, x) for c in e.children)
    if isinstance(e, Sum):
        return eval_tree(e.left, x) + eval_tree(e.right, x)
    return -eval_tree(e.child, x)


# -- normal forms -------------------------------------------------------------

def _dedup(forms: Iterable[LinearForm]) -> tuple[LinearForm, ...]:
    return tuple(dict.fromkeys(forms))


def sumset(s: Sequence[LinearForm], t: Sequence[LinearForm]) -> tuple[LinearForm, ...]:
    return _dedup(a + b for a in s for b in t)


def prune_redundant(forms: Sequence[LinearForm], n: int) -> tuple[LinearForm, ...]:
    """Keep only forms that are the strict unique minimiser on some open region.

    The surviving set has the same pointwise minimum as the input.
    """
    forms = _dedup(forms)
    if not forms:
        raise ValueError("cannot prune an empty set of forms")
    # among forms with the same gradient only the smallest constant can ever be minimal
    lowest: dict[tuple, LinearForm] = {}
    for f in forms:
        best = lowest.get(f.coeffs)
        if best is None or f.constant < best.constant:
            lowest[f.coeffs] = f
    forms = [f for f in forms if lowest[f.coeffs] is f]
    if len(forms) == 1:
        return tuple(forms)

    # A form that is never the strict minimiser can be dropped before testing the
    # rest, since removing it leaves the pointwise minimum unchanged.
    alive = list(forms)
    witnesses: list[tuple[Fraction, ...]] = []
    for f in forms:
        others = [g for g in alive if g is not f]
        if any(all(g(x) > f(x) for g in others) for x in witnesses):
            continue
        x = interior_point(Polyhedron.from_forms(n, [g - f for g in others]))
        if x is None:
            alive.remove(f)
        else:
            witnesses.append(x)
    return tuple(alive)


@dataclass(frozen=True)
class NormalForm:
    """``x -> min(numer)(x) - min(denom)(x)``; equality ignores the order of forms."""

    numer: tuple[LinearForm, ...]
    denom: tuple[LinearForm, ...]
    dim: int

    def __post_init__(self):
        if not self.numer or not self.denom:
            raise ValueError("both min-sets must be nonempty")
        for f in self.numer + self.denom:
            if f.dim != self.dim:
                raise ValueError("form dimension differs from the normal form's dimension")

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return (
            self.dim == other.dim
            and frozenset(self.numer) == frozenset(other.numer)
            and frozenset(self.denom) == frozenset(other.denom)
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.numer), frozenset(self.denom)))

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return min(f(x) for f in self.numer) - min(f(x) for f in self.denom)

    @property
    def concave(self) -> bool:
        """A plain min of linear forms (trivial denominator)."""
        return len(self.denom) == 1

    def format(self, names: Sequence[str]) -> str:
        def block(forms):
            inner = ", ".join(f.format(names) for f in forms)
            return inner if len(forms) == 1 else f"min({inner})"

        zero = LinearForm.zero(self.dim)
        head = block(self.numer)
        if self.denom == (zero,):
            return head
        tail = f"({block(self.denom)})" if len(self.denom) == 1 else block(self.denom)
        return f"-{tail}" if self.numer == (zero,) else f"{head} - {tail}"


def normalize(e: Expr, n: int) -> NormalForm:
    """Rewrite an expression tree into ``min(A) - min(B)``, pruning after every step."""
    zero = (LinearForm.zero(n),)

    def go(node: Expr) -> tuple[tuple[LinearForm, ...], tuple[LinearForm, ...]]:
        if isinstance(node, Lin):
            if node.form.dim != n:
                raise ValueError(f"form of dimension {node.form.dim} in a {n}-variable expression")
            return (node.form,), zero
        if isinstance(node, Neg):
            a, b = go(node.child)
            return b, a
        if isinstance(node, Sum):
            a1, b1 = go(node.left)
            a2, b2 = go(node.right)
            return prune_redundant(sumset(a1, a2), n), prune_redundant(sumset(b1, b2), n)
        # min(a1 - b1, a2 - b2) = min(a1 + b2, a2 + b1) - (b1 + b2)
        a, b = go(node.children[0])
        for child in node.children[1:]:
            a2, b2 = go(child)
            a = prune_redundant(_dedup(sumset(a, b2) + sumset(a2, b)), n)
            b = prune_redundant(sumset(b, b2), n)
        return a, b

    numer, denom = go(e)
    # a lone form on either side can be moved across, which makes the result canonical
    # for concave and convex coordinates
    if len(denom) == 1:
        numer, denom = tuple(f - denom[0] for f in numer), zero
    elif len(numer) == 1:
        numer, denom = zero, tuple(f - numer[0] for f in denom)
    return NormalForm(numer, denom, n)


# -- maps ---------------------------------------------------------------------

@dataclass(frozen=True)
class TropicalMap:
    name: str
    variables: tuple[str, ...]
    coords: tuple[NormalForm, ...]

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for c in self.coords:
            if c.dim != len(self.variables):
                raise ValueError("coordinate dimension differs from the number of variables")

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.coords)

    @property
    def square(self) -> bool:
        return self.n == self.m

    @property
    def concave(self) -> bool:
        """Every coordinate is a plain min (a tropical polynomial map)."""
        return all(c.concave for c in self.coords)

    def __call__(self, x: Sequence[Rational]) -> tuple[Fraction, ...]:
        return eval_expr(self, x)


def eval_expr(f: TropicalMap, x: Sequence[Rational]) -> tuple[Fraction, ...]:
    x = qvec(x)
    if len(x) != f.n:
        raise ValueError(f"point has dimension {len(x)}, map {f.name} takes {f.n}")
    return tuple(c(x) for c in f.coords)
