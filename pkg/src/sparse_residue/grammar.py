"""Restricted coefficient grammar.

::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' INT)?
    atom    := RATIONAL | SYMBOL | '(' expr ')'

``RATIONAL`` is ``digits`` or ``digits/digits`` written without spaces.
Exponents are non-negative integer literals.  The printer emits terms in
descending graded-lex order with no spaces, e.g. ``a1^2*b3-2*a1*a3*b1*b3``,
and the parser reads that form back to the same polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Mapping, Sequence, Tuple, Union

from .errors import GrammarError
from .exact import MPoly, RatFunc

_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+/\d+)|(?P<int>\d+)|(?P<sym>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise GrammarError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, params: Sequence[str]):
        self.text = text
        self.params = tuple(params)
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise GrammarError(msg, self.text, tok[2])

    def expr(self) -> MPoly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> MPoly:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MPoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("exponent must be a non-negative integer literal", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> MPoly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return MPoly.const(self.params, int(val))
        if kind == "rat":
            p, q = val.split("/")
            if int(q) == 0:
                self.fail("zero denominator in rational literal", tok)
            return MPoly.const(self.params, Fraction(int(p), int(q)))
        if kind == "sym":
            if val not in self.params:
                self.fail(f"unknown symbol {val!r}", tok)
            return MPoly.var(self.params, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected token {val!r}", tok)


def parse_mpoly(text: str, params: Sequence[str]) -> MPoly:
    """Parse a coefficient string into an MPoly over ``params``."""
    if not isinstance(text, str):
        raise GrammarError(f"coefficient must be a string, got {type(text).__name__}")
    p = _Parser(text, params)
    if p.peek()[0] == "end":
        p.fail("empty expression")
    value = p.expr()
    if p.peek()[0] != "end":
        p.fail(f"unexpected token {p.peek()[1]!r}")
    return value


def parse_ratfunc(obj: Union[str, Mapping[str, str]], params: Sequence[str]) -> RatFunc:
    """Parse either a grammar string or a ``{"num": ..., "den": ...}`` pair."""
    if isinstance(obj, Mapping):
        try:
            num, den = obj["num"], obj["den"]
        except KeyError as exc:
            raise GrammarError(f"rational function object needs 'num' and 'den', missing {exc}") from None
        return RatFunc(parse_mpoly(num, params), parse_mpoly(den, params))
    return RatFunc(parse_mpoly(obj, params))


def parse_rational(text) -> Fraction:
    """Parse an exact rational (grammar string without symbols, or a JSON int)."""
    if isinstance(text, bool):
        raise GrammarError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    return parse_mpoly(text, ()).constant_value()


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(params: Sequence[str], e) -> str:
    parts = []
    for name, k in zip(params, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_mpoly(p: MPoly) -> str:
    """Canonical grammar string for ``p`` (``0`` for the zero polynomial)."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = _format_monomial(p.params, e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if out:
            out.append(("-" if neg else "+") + body)
        else:
            out.append(("-" if neg else "") + body)
    return "".join(out)


def format_rational(c: Fraction) -> str:
    neg = c < 0
    s = _format_coeff(-c if neg else c)
    return "-" + s if neg else s


def ratfunc_to_json(r: RatFunc) -> dict:
    return {"num": format_mpoly(r.num), "den": format_mpoly(r.den)}


def coeff_to_str(c) -> str:
    """Grammar string for a Fraction or a polynomial RatFunc coefficient."""
    if isinstance(c, RatFunc):
        if not c.is_polynomial():
            raise GrammarError("coefficient is not polynomial; use the num/den form")
        if c.den == 1:
            return format_mpoly(c.num)
        return format_mpoly(c.num.scale(1 / c.den.constant_value()))
    if isinstance(c, MPoly):
        return format_mpoly(c)
    return format_rational(Fraction(c))
