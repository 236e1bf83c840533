"""Reader for the ``.sys`` polynomial-system format.

    params x1 x2          # parameter names, possibly none
    vars y1 y2            # at least one variable
    eq x1*y1^2 - 1/2      # one equation per line
    eq y2/(x1 + 1) - y1

Operators are ``+ - * / ^`` with explicit ``*``; ``/`` only accepts a
divisor that involves parameters alone.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from hnpkit.errors import ParseError
from hnpkit.polycore.polynomial import Polynomial
from hnpkit.polycore.system import ParamPolynomial, PolynomialSystem

KEYWORDS = ("params", "vars", "eq")

TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<int>[0-9]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize_line(text: str, line: int) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos] == "#":
            break
        match = TOKEN_RE.match(text, pos)
        if match is None:
            ch = text[pos]
            what = f"non-ASCII character {ch!r}" if ord(ch) > 127 else f"unexpected character {ch!r}"
            raise ParseError(what, line, pos + 1)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), line, pos + 1))
        pos = match.end()
    tokens.append(Token("end", "", line, len(text) + 1))
    return tokens


@dataclass(frozen=True)
class _Expr:
    """num / den on the joint space; den involves parameters only."""

    num: Polynomial
    den: Polynomial


class _ExpressionParser:
    def __init__(self, tokens: list[Token], names: dict[str, int], m: int, nvars: int) -> None:
        self.tokens = tokens
        self.pos = 0
        self.names = names
        self.m = m
        self.nvars = nvars

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.token
        return ParseError(message, tok.line, tok.column)

    def expect_end(self) -> None:
        if self.token.kind != "end":
            raise self.error(f"unexpected {self.token.text!r}")

    def const(self, c) -> _Expr:
        return _Expr(Polynomial.constant(self.nvars, c), Polynomial.constant(self.nvars, 1))

    def expr(self) -> _Expr:
        left = self.term()
        while self.token.kind == "op" and self.token.text in "+-":
            op = self.advance().text
            right = self.term()
            left = _add(left, right, negate=(op == "-"))
        return left

    def term(self) -> _Expr:
        left = self.factor()
        while self.token.kind == "op" and self.token.text in "*/":
            op = self.advance()
            right = self.factor()
            if op.text == "*":
                left = _Expr(left.num * right.num, left.den * right.den)
            else:
                if right.num.involves(range(self.m, self.nvars)):
                    raise self.error("divisor must involve parameters only", op)
                if not right.num:
                    raise self.error("division by zero", op)
                left = _Expr(left.num * right.den, left.den * right.num)
            left = _fold_constant_denominator(left)
        return left

    def factor(self) -> _Expr:
        if self.token.kind == "op" and self.token.text == "-":
            self.advance()
            inner = self.factor()
            return _Expr(-inner.num, inner.den)
        base = self.base()
        if self.token.kind == "op" and self.token.text == "^":
            self.advance()
            exponent = self.exponent()
            base = _fold_constant_denominator(_Expr(base.num**exponent, base.den**exponent))
        return base

    def exponent(self) -> int:
        tok = self.token
        if tok.kind == "int":
            self.advance()
            return int(tok.text)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.token
            if inner.kind != "int":
                raise self.error("exponent must be a non-negative integer", inner)
            self.advance()
            if not (self.token.kind == "op" and self.token.text == ")"):
                raise self.error("expected ')' after exponent")
            self.advance()
            return int(inner.text)
        raise self.error("exponent must be a non-negative integer", tok)

    def base(self) -> _Expr:
        tok = self.token
        if tok.kind == "int":
            self.advance()
            return self.const(int(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text not in self.names:
                raise self.error(f"undeclared identifier {tok.text!r}", tok)
            return _Expr(
                Polynomial.variable(self.nvars, self.names[tok.text]),
                Polynomial.constant(self.nvars, 1),
            )
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.expr()
            if not (self.token.kind == "op" and self.token.text == ")"):
                raise self.error("expected ')'")
            self.advance()
            return inner
        if tok.kind == "end":
            raise self.error("unexpected end of line")
        raise self.error(f"unexpected {tok.text!r}")


def _add(a: _Expr, b: _Expr, negate: bool) -> _Expr:
    bn = -b.num if negate else b.num
    if a.den == b.den:
        return _Expr(a.num + bn, a.den)
    return _fold_constant_denominator(_Expr(a.num * b.den + bn * a.den, a.den * b.den))


def _fold_constant_denominator(e: _Expr) -> _Expr:
    if e.den.is_constant() and e.den.constant_coefficient() != 1:
        c = Fraction(e.den.constant_coefficient())
        return _Expr(e.num.scale(1 / c), Polynomial.constant(e.den.nvars, 1))
    return e


def _header(tokens: list[Token], keyword: str, line: int, minimum: int) -> list[str]:
    if tokens[0].kind != "ident" or tokens[0].text != keyword:
        found = tokens[0].text or "end of input"
        raise ParseError(f"missing '{keyword}' section (found {found!r})", line, tokens[0].column)
    names: list[str] = []
    for tok in tokens[1:-1]:
        if tok.kind != "ident":
            raise ParseError(f"expected an identifier in '{keyword}', got {tok.text!r}", tok.line, tok.column)
        if tok.text in KEYWORDS:
            raise ParseError(f"{tok.text!r} is a keyword", tok.line, tok.column)
        names.append(tok.text)
    if len(names) < minimum:
        raise ParseError(f"'{keyword}' needs at least {minimum} name", line, tokens[-1].column)
    return names


def _significant_lines(text: str) -> list[tuple[int, list[Token]]]:
    lines = []
    for number, raw in enumerate(text.split("\n"), start=1):
        tokens = tokenize_line(raw, number)
        if len(tokens) > 1:
            lines.append((number, tokens))
    return lines


def parse_system(text: str | bytes) -> PolynomialSystem:
    """Parse a whole system; coefficients may be rational, denominators may involve parameters."""
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not ASCII (byte offset {e.start})", 1, 1) from e
    for number, raw in enumerate(text.split("\n"), start=1):
        for column, ch in enumerate(raw, start=1):
            if ord(ch) > 127:
                raise ParseError(f"non-ASCII character {ch!r}", number, column)
    lines = _significant_lines(text)
    if not lines:
        raise ParseError("missing 'params' section (empty input)", 1, 1)
    line_no, tokens = lines[0]
    params = _header(tokens, "params", line_no, minimum=0)
    if len(lines) < 2:
        raise ParseError("missing 'vars' section", line_no + 1, 1)
    line_no, tokens = lines[1]
    variables = _header(tokens, "vars", line_no, minimum=1)
    names = _declare(params + variables, lines[0][1] + lines[1][1])
    m, n = len(params), len(variables)
    polys: list[ParamPolynomial] = []
    for line_no, tokens in lines[2:]:
        if tokens[0].kind != "ident" or tokens[0].text != "eq":
            raise ParseError(f"expected 'eq', got {tokens[0].text!r}", line_no, tokens[0].column)
        parser = _ExpressionParser(tokens, names, m, m + n)
        parser.advance()
        value = parser.expr()
        parser.expect_end()
        polys.append(_to_param(value, m, n))
    if not polys:
        raise ParseError("missing 'eq' section: a system needs at least one equation", lines[-1][0] + 1, 1)
    return PolynomialSystem(tuple(polys), m, n, tuple(params), tuple(variables))


def _declare(names: list[str], header_tokens: list[Token]) -> dict[str, int]:
    out: dict[str, int] = {}
    for i, name in enumerate(names):
        if name in out:
            tok = next((t for t in header_tokens if t.text == name), None)
            line, column = (tok.line, tok.column) if tok else (0, 0)
            raise ParseError(f"identifier {name!r} declared twice", line, column)
        out[name] = i
    return out


def _to_param(value: _Expr, m: int, n: int) -> ParamPolynomial:
    if value.den.is_constant():
        return ParamPolynomial(value.num, m, n)
    return ParamPolynomial(value.num, m, n, value.den)


def parse_polynomial(text: str, param_names: Sequence[str], var_names: Sequence[str]) -> ParamPolynomial:
    """Parse a single expression over the given names (no ``eq`` keyword)."""
    names = _declare(list(param_names) + list(var_names), [])
    m, n = len(param_names), len(var_names)
    parser = _ExpressionParser(tokenize_line(text.strip(), 1), names, m, m + n)
    value = parser.expr()
    parser.expect_end()
    return _to_param(value, m, n)
