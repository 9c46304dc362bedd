"""Line-oriented presentation files.

    field 0
    vars X Y
    lowey 5          # optional: adjoin <X>^5
    gen X^2 + Y^2

Polynomial expressions use ``+ - * ^``, parentheses and integer or rational
coefficients.  Every error carries a 1-based line and column.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import IdealPresentation
from .errors import FieldError, ParseError
from .polyfield import FieldSpec, Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _ExprParser:
    def __init__(self, text: str, line: int, col0: int, field: FieldSpec, names: Dict[str, int]):
        self.line = line
        self.field = field
        self.names = names
        self.n = len(names)
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            num, ident, op = m.groups()
            start = m.start(m.lastindex) + col0
            if num is not None:
                self.tokens.append(("num", num, start))
            elif ident is not None:
                self.tokens.append(("id", ident, start))
            else:
                self.tokens.append(("op", op, start))
            pos = m.end()
        self.end_col = col0 + len(text.rstrip())
        self.i = 0

    def error(self, msg, col=None):
        if col is None:
            col = self.tokens[self.i][2] if self.i < len(self.tokens) else self.end_col
        raise ParseError(msg, self.line, col)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of expression")
        self.i += 1
        return tok

    def expect_op(self, op):
        tok = self.peek()
        if tok is None or tok[:2] != ("op", op):
            self.error(f"expected '{op}'")
        self.i += 1

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.error("empty expression")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token '{self.peek()[1]}'")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.i += 1
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[:2] == ("op", "*"):
                self.i += 1
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Polynomial:
        kind, val, col = self.take()
        if kind == "num":
            if "/" in val:
                a, b = val.split("/")
                if int(b) == 0:
                    self.error("zero denominator", col)
                c = Fraction(int(a), int(b))
                if self.field.characteristic and int(b) % self.field.characteristic == 0:
                    self.error(f"denominator divisible by {self.field.characteristic}", col)
            else:
                c = int(val)
            return Polynomial.constant(self.field, self.n, c)
        if kind == "id":
            if val not in self.names:
                self.error(f"undeclared variable '{val}'", col)
            v = Polynomial.variable(self.field, self.n, self.names[val])
            tok = self.peek()
            if tok and tok[:2] == ("op", "^"):
                self.i += 1
                k, e, ecol = self.take()
                if k != "num" or "/" in e:
                    self.error("exponent must be a non-negative integer", ecol)
                return v ** int(e)
            return v
        if val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if val == "-":
            return -self.factor()
        self.error(f"unexpected token '{val}'", col)


def parse_polynomial(text: str, field: FieldSpec, names, line: int = 1, col0: int = 1) -> Polynomial:
    return _ExprParser(text, line, col0, field, {v: i for i, v in enumerate(names)}).parse()


def _int_arg(args: str, line: int, col: int, what: str) -> int:
    s = args.strip()
    if not re.fullmatch(r"\d+", s):
        raise ParseError(f"{what} expects a non-negative integer", line, col)
    return int(s)


def parse_presentation(text: str) -> IdealPresentation:
    field: Optional[FieldSpec] = None
    names: Optional[Tuple[str, ...]] = None
    power: Optional[int] = None
    gens: List[Polynomial] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        keyword, _, rest = stripped.partition(" ")
        kw_end = col + len(keyword)
        rest_col = kw_end + (len(stripped) - len(keyword) - len(rest.lstrip()) if rest else 0)
        if keyword == "field":
            if field is not None:
                raise ParseError("duplicate field line", lineno, col)
            c = _int_arg(rest, lineno, kw_end, "field")
            try:
                field = FieldSpec(c)
            except FieldError as e:
                raise FieldError(f"line {lineno}: {e}") from None
        elif keyword == "vars":
            if names is not None:
                raise ParseError("duplicate vars line", lineno, col)
            vs = rest.split()
            if not vs:
                raise ParseError("vars needs at least one name", lineno, kw_end)
            for v in vs:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                    raise ParseError(f"bad variable name '{v}'", lineno, col + line.strip().find(v))
            if len(set(vs)) != len(vs):
                raise ParseError("duplicate variable name", lineno, kw_end)
            names = tuple(vs)
        elif keyword == "lowey":
            if power is not None:
                raise ParseError("duplicate lowey line", lineno, col)
            power = _int_arg(rest, lineno, kw_end, "lowey")
            if power < 1:
                raise ParseError("lowey must be positive", lineno, kw_end)
        elif keyword == "gen":
            if field is None or names is None:
                raise ParseError("gen before field and vars", lineno, col)
            if not rest.strip():
                raise ParseError("empty expression", lineno, kw_end)
            p = parse_polynomial(rest, field, names, lineno, rest_col)
            if p.is_zero():
                raise ParseError("generator is zero", lineno, rest_col)
            gens.append(p)
        else:
            raise ParseError(f"unknown keyword '{keyword}'", lineno, col)
    if field is None:
        raise ParseError("missing field line")
    if names is None:
        raise ParseError("missing vars line")
    return IdealPresentation(field, len(names), tuple(gens), power, names)


def format_presentation(p: IdealPresentation) -> str:
    """Canonical text form; parsing it gives back an equal presentation."""
    lines = [f"field {p.field.characteristic}", "vars " + " ".join(p.names)]
    if p.power is not None:
        lines.append(f"lowey {p.power}")
    lines.extend("gen " + g.to_str(p.names) for g in p.generators)
    return "\n".join(lines) + "\n"
