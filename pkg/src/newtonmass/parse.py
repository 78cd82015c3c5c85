"""Reader and writer for polynomial-system files.

Grammar (one statement per line, ``#`` starts a comment)::

    vars: x, y
    at: (1, -1)          # optional basepoint, default the origin
    q: 2                 # optional exponent weight, default 2
    P1 = x^2*y - 1
    P2 = (1/2 + 3/4*i)*x*y^2 - 1

Coefficients are exact: integers, quotients ``a/b`` and the imaginary unit
``i``.  Products must be written with ``*``; exponents are nonnegative
integer literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .errors import ParseError, UnsupportedDimension
from .exactpoly import MAX_DIM, GaussianRational, PolyMap, Polynomial, format_polynomial
from .indicator import UFunctionSpec

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")


@dataclass(frozen=True)
class SystemFile:
    variables: Tuple[str, ...]
    polynomials: Tuple[Tuple[str, Polynomial], ...]
    basepoint: Optional[Tuple[GaussianRational, ...]] = None
    q: Fraction = Fraction(2)
    source: Optional[str] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def polys(self) -> List[Polynomial]:
        return [p for _, p in self.polynomials]

    def to_ufunction(self, at=None) -> UFunctionSpec:
        at = self.basepoint if at is None else at
        if len(self.polynomials) == 1:
            return UFunctionSpec.log_abs(self.polys[0], at)
        return UFunctionSpec.log_sum(PolyMap(tuple(self.polys), self.q), at)


class _Tokens:
    def __init__(self, text: str, line: int, offset: int):
        self.items = []
        self.line = line
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                col = offset + pos + (len(text[pos:]) - len(text[pos:].lstrip())) + 1
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", line, col)
            kind = m.lastgroup
            start = m.start(kind)
            self.items.append((kind, m.group(kind), offset + start + 1))
            pos = m.end()
        self.i = 0
        self.end_col = offset + len(text) + 1

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, None, self.end_col)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.line, tok[2])


class _ExprParser:
    """Recursive descent: expr := term (('+'|'-') term)*, term := unary (('*'|'/') unary)*,
    unary := ('+'|'-') unary | power, power := atom ('^' INT)?"""

    def __init__(self, toks: _Tokens, variables: Sequence[str]):
        self.t = toks
        self.vars = {v: k for k, v in enumerate(variables)}
        self.n = max(1, len(variables))

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, _ = self.t.peek()
        if kind is not None:
            if kind in ("num", "name") or val == "(":
                raise self.t.error("implicit multiplication is not allowed; use '*'")
            raise self.t.error(f"unexpected {val!r}")
        return p

    def expr(self):
        p = self.term()
        while self.t.peek()[1] in ("+", "-"):
            op = self.t.take()[1]
            r = self.term()
            p = p + r if op == "+" else p - r
        return p

    def term(self):
        p = self.unary()
        while True:
            kind, val, _ = self.t.peek()
            if val == "*":
                self.t.take()
                p = p * self.unary()
            elif val == "/":
                tok = self.t.take()
                r = self.unary()
                if not r.is_constant() or r.is_zero():
                    raise self.t.error("can only divide by a nonzero constant", tok)
                p = p.scale(GaussianRational(1) / r.coefficient((0,) * self.n))
            elif kind in ("num", "name") or val == "(":
                raise self.t.error("implicit multiplication is not allowed; use '*'")
            else:
                return p

    def unary(self):
        val = self.t.peek()[1]
        if val == "-":
            self.t.take()
            return -self.unary()
        if val == "+":
            self.t.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.t.peek()[1] == "^":
            self.t.take()
            tok = self.t.take()
            if tok[0] != "num":
                raise self.t.error("exponent must be a nonnegative integer literal", tok)
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.t.take()
        kind, val, _ = tok
        if kind == "num":
            return Polynomial.constant(self.n, int(val))
        if kind == "name":
            if val in self.vars:
                return Polynomial.variable(self.n, self.vars[val])
            if val == "i":
                return Polynomial.constant(self.n, GaussianRational(0, 1))
            raise self.t.error(f"undeclared variable {val!r}", tok)
        if val == "(":
            p = self.expr()
            close = self.t.take()
            if close[1] != ")":
                raise self.t.error("expected ')'", close)
            return p
        if kind is None:
            raise self.t.error("unexpected end of expression", tok)
        raise self.t.error(f"unexpected {val!r}", tok)


def _constant(text: str, line: int, offset: int) -> GaussianRational:
    p = _ExprParser(_Tokens(text, line, offset), []).parse()
    if not p.is_constant():
        raise ParseError("expected a constant", line, offset + 1)
    return p.coefficient((0,))


def parse_point(text: str, n: Optional[int] = None, line: int = 1, offset: int = 0):
    """Parse ``(a, b, ...)`` (parentheses optional) into exact coordinates."""
    body = text.strip()
    lead = len(text) - len(text.lstrip())
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
        lead += 1
    parts = body.split(",")
    coords = []
    col = offset + lead
    for part in parts:
        if not part.strip():
            raise ParseError("empty coordinate", line, col + 1)
        coords.append(_constant(part, line, col))
        col += len(part) + 1
    if n is not None and len(coords) != n:
        raise ParseError(f"point has {len(coords)} coordinates, expected {n}", line, offset + 1)
    return tuple(coords)


def parse_expression(text: str, variables: Sequence[str]) -> Polynomial:
    return _ExprParser(_Tokens(text, 1, 0), variables).parse()


def parse_system(text: str, source: Optional[str] = None) -> SystemFile:
    variables: Optional[Tuple[str, ...]] = None
    polys: List[Tuple[str, Polynomial]] = []
    at_line = None
    q = Fraction(2)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head = re.match(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*([:=])", line)
        if not head:
            raise ParseError("expected 'vars:', 'at:', 'q:' or 'NAME = expression'", lineno, 1)
        key, sep = head.group(1), head.group(2)
        rest, offset = line[head.end():], head.end()
        if sep == ":":
            if key == "vars":
                if variables is not None:
                    raise ParseError("variables declared twice", lineno, 1)
                names = [v.strip() for v in rest.split(",")]
                for v in names:
                    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                        raise ParseError(f"bad variable name {v!r}", lineno, offset + 1)
                    if v == "i":
                        raise ParseError("'i' is reserved for the imaginary unit", lineno, offset + 1)
                if len(set(names)) != len(names):
                    raise ParseError("duplicate variable name", lineno, offset + 1)
                if len(names) > MAX_DIM:
                    raise UnsupportedDimension(f"at most {MAX_DIM} variables are supported, got {len(names)}")
                variables = tuple(names)
            elif key == "at":
                at_line = (rest, lineno, offset)
            elif key == "q":
                c = _constant(rest, lineno, offset)
                if c.im != 0 or c.re <= 0:
                    raise ParseError("q must be a positive rational", lineno, offset + 1)
                q = c.re
            else:
                raise ParseError(f"unknown option {key!r}", lineno, 1)
        else:
            if variables is None:
                raise ParseError("'vars:' must come before the first polynomial", lineno, 1)
            if any(name == key for name, _ in polys):
                raise ParseError(f"polynomial {key!r} defined twice", lineno, 1)
            polys.append((key, _ExprParser(_Tokens(rest, lineno, offset), variables).parse()))
    if variables is None:
        raise ParseError("missing 'vars:' declaration", 1, 1)
    if not polys:
        raise ParseError("no polynomials defined", 1, 1)
    basepoint = None
    if at_line is not None:
        basepoint = parse_point(at_line[0], len(variables), at_line[1], at_line[2])
    return SystemFile(variables, tuple(polys), basepoint, q, source)


def load_system(path) -> SystemFile:
    path = Path(path)
    return parse_system(path.read_text(encoding="utf-8"), str(path))


def format_system(sf: SystemFile) -> str:
    lines = [f"vars: {', '.join(sf.variables)}"]
    if sf.basepoint is not None:
        lines.append("at: (" + ", ".join(str(c) for c in sf.basepoint) + ")")
    if sf.q != 2:
        lines.append(f"q: {sf.q}")
    for name, p in sf.polynomials:
        lines.append(f"{name} = {format_polynomial(p, sf.variables)}")
    return "\n".join(lines) + "\n"
