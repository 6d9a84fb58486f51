"""Text formats: polynomial expressions, bracket/cubic files and reports.

Expression grammar (whitespace-insensitive)::

    expr   := [sign] term (sign term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' uint)?
    atom   := uint | identifier | '(' expr ')'
    sign   := '+' | '-'

Division is only allowed by a nonzero scalar (a rational, or a polynomial in
``h`` where ``h`` is permitted), so ``3/2*x1`` and ``(1 - h)/(1 + h)`` parse
but ``x1/x2`` does not.  Identifiers are the declared variables (``x1``,
``x2``, ``x3`` by default) and, where enabled, ``h``.

Bracket files hold three lines ``y12 = ...``, ``y23 = ...``, ``y31 = ...``;
cubic files hold one line ``f = ...``.  ``#`` starts a comment.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact.linalg import Matrix
from .exact.poly import DEFAULT_VARS, Poly
from .exact.ratfunc import H, RatFunc, _format_rational, format_ratfunc

__all__ = [
    "ParseError",
    "UnknownIdentifier",
    "MissingComponent",
    "NonQuadratic",
    "SourceText",
    "parse_poly",
    "parse_scalar",
    "parse_bracket",
    "parse_cubic",
    "parse_matrix",
    "format_poly",
    "format_scalar",
    "format_bracket",
    "format_ncpoly",
    "format_operator",
    "to_report",
    "dumps_report",
    "loads_report",
]


class ParseError(ValueError):
    """Syntax or semantic error in an input text, with a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownIdentifier(ParseError):
    pass


class MissingComponent(ParseError):
    pass


class NonQuadratic(ParseError):
    pass


@dataclass(frozen=True)
class SourceText:
    text: str
    line: int = 1
    column_offset: int = 0

    def position(self, index: int) -> tuple[int, int]:
        return self.line, self.column_offset + index + 1


# ---------------------------------------------------------------------------
# tokenizer / parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(src: SourceText):
    toks = []
    pos = 0
    text = src.text
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1):
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("id", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", *src.position(m.start(3)))
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, src: SourceText, vars: tuple[str, ...], allow_h: bool):
        self.src = src
        self.vars = vars
        self.allow_h = allow_h
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.peek()
        return cls(msg, *self.src.position(tok[2]))

    def parse(self) -> Poly:
        out = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Poly:
        out = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            rhs_tok = self.peek()
            rhs = self.factor()
            if op[0] == "*":
                out = out * rhs
            else:
                if rhs.degree() > 0:
                    raise self.error("division by a non-constant expression", rhs_tok)
                c = rhs.coeff((0,) * len(self.vars))
                if not c:
                    raise self.error("division by zero", rhs_tok)
                out = out.scale(1 / c)
        return out

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise self.error("expected a non-negative integer exponent", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, text, _ = tok
        if kind == "num":
            return Poly.const(Fraction(int(text)), self.vars)
        if kind == "id":
            if text in self.vars:
                return Poly.var(text, self.vars)
            if text == "h":
                if not self.allow_h:
                    raise self.error("'h' is not allowed here (brackets are h-free)", tok, UnknownIdentifier)
                return Poly.const(H, self.vars)
            raise self.error(f"unknown identifier {text!r}", tok, UnknownIdentifier)
        if kind == "(":
            inner = self.expr()
            if self.peek()[0] != ")":
                raise self.error("expected ')'")
            self.take()
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {text!r}", tok)


def parse_poly(text: str | SourceText, vars: Iterable[str] = DEFAULT_VARS, allow_h: bool = False,
               symbols: Iterable[str] = ()) -> Poly:
    """Parse an expression into a :class:`Poly` over ``vars`` plus ``symbols``."""
    src = text if isinstance(text, SourceText) else SourceText(text)
    vs = tuple(vars) + tuple(s for s in symbols if s not in vars)
    return _Parser(src, vs, allow_h).parse()


def parse_scalar(text: str | SourceText):
    """Parse a constant: a rational or a rational function of ``h``."""
    p = parse_poly(text, vars=(), allow_h=True)
    c = p.coeff(())
    if isinstance(c, RatFunc) and c.is_constant():
        return c.constant_value()
    return c


def _logical_lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield n, raw, body


def _parse_assignments(text: str, allowed: tuple[str, ...], allow_h: bool = False) -> dict:
    found: dict = {}
    for n, raw, body in _logical_lines(text):
        if "=" not in body:
            raise ParseError("expected '<name> = <expression>'", n, len(raw) - len(raw.lstrip()) + 1)
        lhs, rhs = body.split("=", 1)
        name = lhs.strip()
        col = body.index(name) + 1 if name else 1
        if name not in allowed:
            raise UnknownIdentifier(f"unknown component {name!r} (expected one of {', '.join(allowed)})", n, col)
        if name in found:
            raise ParseError(f"duplicate component {name!r}", n, col)
        offset = len(lhs) + 1
        found[name] = (n, col, parse_poly(SourceText(rhs, n, offset), allow_h=allow_h))
    return found


def parse_bracket(text: str):
    """Parse a bracket file into a :class:`~quadpoisson.bracket.QuadraticBracket`."""
    from .bracket import QuadraticBracket

    names = ("y12", "y23", "y31")
    found = _parse_assignments(text, names)
    for name in names:
        if name not in found:
            last = max((v[0] for v in found.values()), default=0)
            raise MissingComponent(f"missing component {name}", last + 1, 1)
    polys = []
    for name in names:
        line, col, p = found[name]
        if p and not p.is_homogeneous(2):
            raise NonQuadratic(f"{name} must be a homogeneous quadratic form, got {format_poly(p)}", line, col)
        polys.append(p)
    return QuadraticBracket.from_polys(*polys)


def parse_cubic(text: str) -> Poly:
    found = _parse_assignments(text, ("f",))
    if "f" not in found:
        raise MissingComponent("missing component f", 1, 1)
    line, col, p = found["f"]
    if p and not p.is_homogeneous(3):
        raise ParseError(f"f must be a homogeneous cubic form, got {format_poly(p)}", line, col)
    return p


def parse_matrix(text: str) -> Matrix:
    """Parse ``"a,b,c; d,e,f; g,h,i"`` into a rational matrix."""
    rows = []
    for r in text.split(";"):
        entries = [e for e in r.split(",")]
        rows.append([parse_scalar(e.strip()) for e in entries])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("ragged matrix", 1, 1)
    return Matrix(rows)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def format_scalar(c) -> str:
    if isinstance(c, RatFunc):
        return format_ratfunc(c)
    if isinstance(c, (int, Fraction)):
        return _format_rational(Fraction(c))
    return str(c)


def _format_mono(vars, mono) -> str:
    parts = []
    for v, e in zip(vars, mono):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text; terms by descending degree then lexicographic exponent."""
    out: list[str] = []
    for mono, c in p.items():
        m = _format_mono(p.vars, mono)
        if isinstance(c, RatFunc) and not c.is_constant():
            body = f"({format_ratfunc(c)})" + (f"*{m}" if m else "")
            out.append(body if not out else f"+ {body}")
            continue
        c = c.constant_value() if isinstance(c, RatFunc) else Fraction(c)
        mag = abs(c)
        if m and mag == 1:
            body = m
        elif m:
            body = f"{_format_rational(mag)}*{m}"
        else:
            body = _format_rational(mag)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out) if out else "0"


def _coeff_parts(c):
    """(sign, magnitude text or None for 1, needs parentheses)."""
    if isinstance(c, RatFunc) and not c.is_constant():
        return 1, f"({format_ratfunc(c)})"
    c = c.constant_value() if isinstance(c, RatFunc) else Fraction(c)
    return (1 if c > 0 else -1), (None if abs(c) == 1 else _format_rational(abs(c)))


def format_ncpoly(terms: dict, letters=DEFAULT_VARS) -> str:
    """Noncommutative polynomial ``{word: coeff}``; words in deglex order."""
    out: list[str] = []
    for w in sorted(terms, key=lambda w: (len(w), w)):
        sign, mag = _coeff_parts(terms[w])
        m = "*".join(letters[i] for i in w)
        if not m:
            body = mag or "1"
        else:
            body = f"{mag}*{m}" if mag else m
        if not out:
            out.append(body if sign > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if sign > 0 else f"- {body}")
    return " ".join(out) if out else "0"


def format_operator(el) -> str:
    """Normal-ordered operator text (see :mod:`quadpoisson.realize.operators`)."""
    from .realize.operators import format_operator as _fmt

    return _fmt(el)


def format_bracket(b) -> str:
    return "\n".join(f"y{i + 1}{j + 1} = {format_poly(b.y(i, j))}" for i, j in ((0, 1), (1, 2), (2, 0))) + "\n"


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def to_report(value):
    """Convert a value tree into JSON-compatible data; exact scalars become strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, RatFunc)):
        return format_scalar(value)
    if isinstance(value, Poly):
        return format_poly(value)
    if isinstance(value, Matrix):
        return [[format_scalar(x) for x in r] for r in value.rows]
    if isinstance(value, dict):
        return {str(k): to_report(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_report(v) for v in value]
    if hasattr(value, "to_report"):
        return to_report(value.to_report())
    return str(value)


def dumps_report(value) -> str:
    return json.dumps(to_report(value), sort_keys=True, indent=2) + "\n"


def loads_report(text: str):
    return json.loads(text)
