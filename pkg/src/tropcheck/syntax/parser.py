"""Recursive-descent parser for ``.trop`` map files.

    map    := "map" IDENT "(" IDENT ("," IDENT)* ")" "=" "(" expr ("," expr)* ")"
    expr   := term (("+" | "-") term)*
    term   := "-" term | product
    product:= primary (["*"] primary)*      # at most one non-constant factor
    primary:= RATIONAL | IDENT | "min" "(" args ")" | "max" "(" args ")" | "(" expr ")"
    RATIONAL := integer ["/" positive-integer]

Juxtaposition (``2y``, ``3min(x, 0)``) is accepted after a number.  Names that
are not declared variables may be bound to rational constants through
``params``; anything else is an unknown identifier.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from tropcheck.linear import LinearForm, Q, Rational
from tropcheck.syntax.forms import (
    Expr,
    Lin,
    Min,
    TropicalMap,
    add,
    make_max,
    negate,
    normalize,
    scale,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, IDENT, OP, EOF
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<num>\d+)"
                    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*/(),=])")


def tokenize(text: str) -> list[Token]:
    text = text.replace("−", "-")
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "num":
            tokens.append(Token("NUM", m.group(), line, col))
        elif kind == "ident":
            tokens.append(Token("IDENT", m.group(), line, col))
        elif kind == "op":
            tokens.append(Token("OP", m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, params: Mapping[str, Rational]):
        self.tokens = tokenize(text)
        self.i = 0
        self.params = {k: Q(v) for k, v in params.items()}
        self.variables: tuple[str, ...] = ()

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return ParseError(f"{message} (found {found})", tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("OP", "IDENT"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.tok
        if not self.accept(text):
            raise self.error(f"expected {text!r}")
        return tok

    def ident(self) -> Token:
        tok = self.tok
        if tok.kind != "IDENT":
            raise self.error("expected an identifier")
        self.i += 1
        return tok

    # -- grammar --

    def map(self) -> tuple[str, tuple[str, ...], list[Expr]]:
        self.expect("map")
        name = self.ident().text
        self.expect("(")
        names = [self.ident()]
        while self.accept(","):
            names.append(self.ident())
        self.expect(")")
        seen = set()
        for t in names:
            if t.text in seen:
                raise ParseError(f"duplicate variable {t.text!r}", t.line, t.col)
            if t.text in ("min", "max", "map"):
                raise ParseError(f"reserved word {t.text!r} used as a variable", t.line, t.col)
            seen.add(t.text)
        self.variables = tuple(t.text for t in names)
        self.expect("=")
        self.expect("(")
        exprs = [self.expr()]
        while self.accept(","):
            exprs.append(self.expr())
        self.expect(")")
        if self.tok.kind != "EOF":
            raise self.error("expected end of input (one map per file)")
        return name, self.variables, exprs

    def expr(self) -> Expr:
        e = self.term()
        while True:
            if self.accept("+"):
                e = add(e, self.term())
            elif self.accept("-"):
                e = add(e, negate(self.term()))
            else:
                return e

    def term(self) -> Expr:
        if self.accept("-"):
            return negate(self.term())
        return self.product()

    def product(self) -> Expr:
        start = self.tok
        factors = [self.primary()]
        while True:
            if self.accept("*"):
                factors.append(self.primary())
            elif factors[-1] is not None and _is_constant(factors[-1]) and self._juxtaposable():
                factors.append(self.primary())
            else:
                break
        const = Fraction(1)
        body: Optional[Expr] = None
        for f in factors:
            if _is_constant(f):
                const *= f.form.constant
            elif body is None:
                body = f
            else:
                raise ParseError("product of two non-constant factors is not linear", start.line, start.col)
        if body is None:
            return Lin(LinearForm.const(len(self.variables), const))
        return body if const == 1 else scale(body, const)

    def _juxtaposable(self) -> bool:
        tok = self.tok
        return tok.kind == "IDENT" or (tok.kind == "OP" and tok.text == "(")

    def primary(self) -> Expr:
        tok = self.tok
        n = len(self.variables)
        if tok.kind == "NUM":
            self.i += 1
            value = Fraction(int(tok.text))
            if self.tok.kind == "OP" and self.tok.text == "/":
                self.i += 1
                den = self.tok
                if den.kind != "NUM":
                    raise self.error("expected a positive integer denominator")
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.line, den.col)
                self.i += 1
                value /= int(den.text)
            return Lin(LinearForm.const(n, value))
        if tok.kind == "IDENT":
            if tok.text in ("min", "max"):
                self.i += 1
                self.expect("(")
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")")
                return Min(tuple(args)) if tok.text == "min" else make_max(args)
            self.i += 1
            if tok.text in self.variables:
                return Lin(LinearForm.var(n, self.variables.index(tok.text)))
            if tok.text in self.params:
                return Lin(LinearForm.const(n, self.params[tok.text]))
            raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.col)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        raise self.error("expected a number, variable, min, max or '('")


def _is_constant(e: Expr) -> bool:
    return isinstance(e, Lin) and e.form.is_constant()


def parse_map(text: str, params: Optional[Mapping[str, Rational]] = None) -> TropicalMap:
    """Parse and normalise a map definition."""
    name, variables, exprs = _Parser(text, params or {}).map()
    n = len(variables)
    return TropicalMap(name, variables, tuple(normalize(e, n) for e in exprs))


def parse_expr(text: str, variables: tuple[str, ...], params: Optional[Mapping[str, Rational]] = None) -> Expr:
    """Parse a single expression over the given variables without normalising it."""
    p = _Parser(text, params or {})
    p.variables = tuple(variables)
    e = p.expr()
    if p.tok.kind != "EOF":
        raise p.error("unexpected trailing input")
    return e


def format_map(f: TropicalMap) -> str:
    body = ", ".join(c.format(f.variables) for c in f.coords)
    return f"map {f.name}({', '.join(f.variables)}) = ({body})\n"
