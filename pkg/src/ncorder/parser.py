"""Text expressions for generators, parameters and relations.

Grammar (whitespace is free; ``*`` is optional between factors)::

    expr     := ["-"] term {("+" | "-") term}
    term     := factor {["*" | "/"] factor}
    factor   := base ["^" exponent]
    base     := NUMBER | NAME | "(" expr ")"
    exponent := INT | "(" ["-"] INT ["/" INT] ")"

Upper-case names made only of generator letters are split into single
generators, so ``AB^2`` reads as ``A B^2``.  Lower-case names are
parameters.  Division is allowed only by scalars.  The printer's output
(``NCPoly.to_str``, ``UniPoly.__str__``) parses back to the same value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .combinat import UniPoly
from .errors import ExponentKindError, ExpressionSyntaxError, UnknownParameter
from .ncalg import LEFT, RIGHT, NCPoly, Relation, make_word
from .scalars import ParamRat, default_space

GENERATORS = {"A": LEFT, "B": RIGHT}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str, generators: Mapping[str, int] = GENERATORS) -> list[Token]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {src[pos]!r}", line, col)
        kind, text = m.lastgroup, m.group()
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "name" and text not in generators and text[0].isupper() and set(text) <= set(generators):
            # juxtaposed generators such as "AB" or "BAA"
            out.extend(Token("name", ch, line, col + i) for i, ch in enumerate(text))
        elif kind != "ws":
            out.append(Token(kind, text, line, col))
        pos = m.end()
    out.append(Token("end", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, src: str, generators: Mapping[str, int], space):
        self.generators = dict(generators)
        self.space = space
        self.tokens = tokenize(src, self.generators)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ExpressionSyntaxError(message, tok.line, tok.col)

    def take(self, text: str | None = None, kind: str | None = None) -> Token | None:
        t = self.tok
        if (text is None or t.text == text) and (kind is None or t.kind == kind) and t.kind != "end":
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.take(text)
        if t is None:
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return t

    def parse(self) -> NCPoly:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return value

    def expr(self) -> NCPoly:
        negate = self.take("-") is not None
        value = self.term()
        if negate:
            value = -value
        while True:
            if self.take("+"):
                value = value + self.term()
            elif self.take("-"):
                value = value - self.term()
            else:
                return value

    def _starts_base(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or t.text == "("

    def term(self) -> NCPoly:
        value = self.factor()
        while True:
            if self.take("*"):
                value = value * self.factor()
            elif self.tok.text == "/":
                slash = self.take("/")
                divisor = self.factor()
                c = _as_scalar(divisor)
                if c is None:
                    raise self.error("division is only defined by scalars", slash)
                if not c:
                    raise self.error("division by zero", slash)
                value = value.scale(1 / c if isinstance(c, ParamRat) else Fraction(1) / c)
            elif self._starts_base():
                value = value * self.factor()
            else:
                return value

    def factor(self) -> NCPoly:
        base = self.base()
        if not self.take("^"):
            return base
        exp_tok = self.tok
        e = self.exponent()
        return _power(base, e, exp_tok, self)

    def base(self) -> NCPoly:
        t = self.tok
        if self.take(kind="num"):
            return NCPoly.scalar(Fraction(t.text))
        if self.take(kind="name"):
            if t.text in self.generators:
                return NCPoly.gen(self.generators[t.text])
            if t.text[0].isupper():
                raise self.error(f"unknown generator {t.text!r}", t)
            try:
                return NCPoly.scalar(self.space.symbol(t.text))
            except UnknownParameter as exc:
                raise ExpressionSyntaxError(str(exc), t.line, t.col) from None
        if self.take("("):
            value = self.expr()
            self.expect(")")
            return value
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise self.error(f"expected a number, name or '(', found {found}")

    def exponent(self) -> Fraction:
        t = self.take(kind="num")
        if t is not None:
            return self._int(t)
        if not self.take("("):
            raise self.error("expected an exponent")
        sign = -1 if self.take("-") else 1
        num = self.take(kind="num")
        if num is None:
            raise self.error("expected an integer exponent")
        value = Fraction(self._int(num))
        if self.take("/"):
            den = self.take(kind="num")
            if den is None:
                raise self.error("expected a denominator")
            d = self._int(den)
            if d == 0:
                raise self.error("zero denominator in exponent", den)
            value /= d
        self.expect(")")
        return sign * value

    def _int(self, t: Token) -> int:
        if not t.text.isdigit():
            raise self.error("exponents are built from integers", t)
        return int(t.text)


def _as_scalar(x: NCPoly):
    if not x.terms:
        return Fraction(0)
    if set(x.terms) == {()}:
        return x.terms[()]
    return None


def _power(base: NCPoly, e: Fraction, tok: Token, parser: _Parser) -> NCPoly:
    e = Fraction(e)
    c = _as_scalar(base)
    if c is not None:
        if e.denominator != 1:
            raise ExponentKindError(f"rational exponent {e} on the scalar {c} (line {tok.line}, column {tok.col})")
        if e < 0 and not c:
            raise parser.error("zero to a negative power", tok)
        return NCPoly.scalar(c ** int(e) if e >= 0 else 1 / c ** int(-e))
    gens = [w for w in base.terms]
    single = len(gens) == 1 and len(gens[0]) == 1 and base.terms[gens[0]] == 1
    if single:
        g, e0 = gens[0][0]
        total = e0 * e
        if total < 0:
            raise ExponentKindError(f"negative exponent on a generator (line {tok.line}, column {tok.col})")
        if g != LEFT and Fraction(total).denominator != 1:
            raise ExponentKindError(f"rational exponent {e} on B (line {tok.line}, column {tok.col})")
        total = Fraction(total)
        return NCPoly.monomial(make_word([(g, total.numerator if total.denominator == 1 else total)]))
    if e.denominator != 1 or e < 0:
        raise ExponentKindError(f"exponent {e} on a sum needs to be a natural number (line {tok.line}, column {tok.col})")
    return base ** int(e)


def parse_nc(src: str, generators: Mapping[str, int] = GENERATORS, space=None) -> NCPoly:
    """Parse ``src`` to an NCPoly, keeping the written order of factors."""
    return _Parser(src, generators, space or default_space()).parse()


def parse_expr(src: str, generators: Mapping[str, int] = GENERATORS, space=None) -> NCPoly | UniPoly:
    """Parse ``src``; one-generator (or constant) results come back as UniPoly."""
    x = parse_nc(src, generators, space)
    gens = x.generators()
    names = {g: n for n, g in generators.items()}
    if gens <= {LEFT}:
        return x.to_unipoly(LEFT, names.get(LEFT, "A"))
    if gens == {RIGHT}:
        return x.to_unipoly(RIGHT, names.get(RIGHT, "B"))
    return x


def parse_relation(src: str) -> Relation:
    """``[B, A] = <src>``: p(A), p(B) or a bivariate polynomial of degree <= 2."""
    text = src.strip()
    if text.lower() == "free":
        return Relation.free()
    value = parse_expr(text)
    if isinstance(value, UniPoly):
        return Relation.left(value) if value.var == "A" else Relation.right(value)
    return Relation.bivariate(value)
