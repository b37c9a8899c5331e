"""Text front-end for polynomials.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-' factor | base ('^' uint)?
    base     := rational | ident | '(' expr ')'
    rational := uint ('/' uint)?

Unary minus binds looser than ``^``: ``-x^2`` is ``-(x^2)``.  There is no
implicit multiplication.  When the field index M is greater than 1 the
identifier ``w`` denotes zeta_M.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exact_arith import CycloNum
from .multipoly import MPoly, PolyContext

__all__ = ["ExprContext", "ParseError", "format_monomial", "format_poly", "format_scalar", "parse"]

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)")


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


def ExprContext(names, M: int = 1) -> PolyContext:
    """Build a :class:`PolyContext`, enforcing the reserved name ``w`` for M > 1."""
    names = tuple(names)
    if M > 1 and "w" in names:
        raise ValueError("'w' is reserved for the root of unity when M > 1")
    for name in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ValueError(f"invalid variable name {name!r}")
    return PolyContext(names, M)


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        start = pos
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: PolyContext):
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> MPoly:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return result

    def expr(self):
        acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a non-negative integer literal", tok[2])
            self.take()
            base = base ** tok[1]
        return base

    def base(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                return self.ctx.const(Fraction(value, den[1]))
            return self.ctx.const(value)
        if kind == "ident":
            self.take()
            if value in self.ctx.names:
                return self.ctx.var(value)
            if value == "w":
                if self.ctx.field.M == 1:
                    raise ParseError("'w' needs a cyclotomic field (M > 1)", pos)
                return self.ctx.const(self.ctx.field.gen)
            raise ParseError(f"unknown identifier {value!r}", pos)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", pos)


def parse(text: str, ctx: PolyContext) -> MPoly:
    return _Parser(text, ctx).parse()


def _join(parts):
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


def _rational_term(c: Fraction, body: str) -> str:
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def format_scalar(c: CycloNum) -> str:
    """A field element as a polynomial in ``w``; non-rational values are parenthesized."""
    if c.is_rational():
        return str(c.coeffs[0])
    parts = []
    for k in range(len(c.coeffs) - 1, -1, -1):
        a = c.coeffs[k]
        if a:
            body = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            parts.append(_rational_term(a, body))
    return "(" + _join(parts) + ")"


def _monomial(names, e) -> str:
    return "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)


def format_monomial(names, e) -> str:
    """``x^2*z`` style power product; ``1`` for the empty product."""
    return _monomial(names, e) or "1"


def format_poly(F: MPoly) -> str:
    if F.is_zero():
        return "0"
    names = F.ctx.names
    parts = []
    for e, c in F.sorted_terms():
        body = _monomial(names, e)
        if c.is_rational():
            parts.append(_rational_term(c.coeffs[0], body))
        else:
            s = format_scalar(c)
            parts.append(f"{s}*{body}" if body else s)
    return _join(parts)
