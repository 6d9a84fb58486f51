"""Rational functions in the deformation parameter h.

Elements of Q(h) are stored as a reduced pair of ``flint.fmpq_poly``
(numerator, denominator).  The denominator is scaled so that its
lowest-order nonzero coefficient equals 1; for fractions regular at
``h = 0`` this means the constant term of the denominator is 1, which
makes specialization at zero a lookup.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from flint import fmpq, fmpq_poly

__all__ = ["RatFunc", "PoleAtZero", "H", "as_ratfunc", "to_fraction"]

_ONE = fmpq_poly([1])
_ZERO = fmpq_poly([])


class PoleAtZero(ArithmeticError):
    """Raised when a value with a pole at h = 0 is specialized there."""


def to_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, fmpq):
        return Fraction(int(q.p), int(q.q))
    return Fraction(q)


def _fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, Rational):
        return fmpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def _trailing(p: fmpq_poly) -> fmpq:
    for c in p.coeffs():
        if c != 0:
            return c
    raise ZeroDivisionError("zero polynomial")


class RatFunc:
    """An element of Q(h) in canonical reduced form.

    Supports mixed arithmetic with ``int`` and ``Fraction``; equality and
    hashing agree with those types on constants.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if isinstance(num, RatFunc) and den is None:
            self.num, self.den = num.num, num.den
            return
        n = num if isinstance(num, fmpq_poly) else fmpq_poly([_fmpq(num)])
        if den is None:
            self.num, self.den = n, _ONE
            return
        d = den if isinstance(den, fmpq_poly) else fmpq_poly([_fmpq(den)])
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(n, d)

    @classmethod
    def _raw(cls, num: fmpq_poly, den: fmpq_poly) -> "RatFunc":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def from_coeffs(cls, num, den=(1,)) -> "RatFunc":
        """Build from ascending coefficient lists, e.g. ``(1, -1), (1, 1)``."""
        return cls(fmpq_poly([_fmpq(c) for c in num]), fmpq_poly([_fmpq(c) for c in den]))

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.degree() < 0

    def __bool__(self) -> bool:
        return self.num.degree() >= 0

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def is_regular_at_zero(self) -> bool:
        return self.den.coeffs()[0] != 0

    # -- conversions ------------------------------------------------------
    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return to_fraction(self.num[0]) if self.num.degree() == 0 else Fraction(0)

    def at_zero(self) -> Fraction:
        """Specialize at h = 0."""
        dc = self.den.coeffs()
        if dc[0] == 0:
            raise PoleAtZero(f"{self} has a pole at h = 0")
        if self.num.degree() < 0:
            return Fraction(0)
        return to_fraction(self.num[0] / dc[0])

    def evaluate(self, value) -> Fraction:
        v = _fmpq(value)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at h = {value}")
        return to_fraction(self.num(v) / d)

    def numerator_coeffs(self) -> list[Fraction]:
        return [to_fraction(c) for c in self.num.coeffs()]

    def denominator_coeffs(self) -> list[Fraction]:
        return [to_fraction(c) for c in self.den.coeffs()]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = as_ratfunc(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            if self.den.degree() == 0:
                return RatFunc._raw(self.num + o.num, _ONE)
            return RatFunc._raw(*_normalize(self.num + o.num, self.den))
        return RatFunc._raw(*_normalize(self.num * o.den + o.num * self.den, self.den * o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = as_ratfunc(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_ratfunc(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = as_ratfunc(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den.degree() == 0 and o.den.degree() == 0:
            return RatFunc._raw(self.num * o.num, _ONE)
        return RatFunc._raw(*_normalize(self.num * o.num, self.den * o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_ratfunc(other)
        if o is NotImplemented:
            return NotImplemented
        if o.num.degree() < 0:
            raise ZeroDivisionError("division by zero in Q(h)")
        return RatFunc._raw(*_normalize(self.num * o.den, self.den * o.num))

    def __rtruediv__(self, other):
        o = as_ratfunc(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (RatFunc(1) / self) ** (-n)
        return RatFunc._raw(self.num**n, self.den**n) if n else RatFunc(1)

    def __eq__(self, other):
        o = as_ratfunc(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((tuple(str(c) for c in self.num.coeffs()), tuple(str(c) for c in self.den.coeffs())))

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def __str__(self):
        return format_ratfunc(self)


def _normalize(n: fmpq_poly, d: fmpq_poly):
    if n.degree() < 0:
        return _ZERO, _ONE
    if d.degree() > 0:
        g = n.gcd(d)
        if g.degree() > 0:
            n = n // g
            d = d // g
    t = _trailing(d)
    if t != 1:
        n = n / t
        d = d / t
    return n, d


def as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction, fmpq)) and not isinstance(x, bool):
        return RatFunc._raw(fmpq_poly([_fmpq(x)]), _ONE)
    return NotImplemented


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_hpoly(coeffs: list[Fraction]) -> str:
    """Ascending-power text for a polynomial in h, e.g. ``1 - 2*h^2``."""
    parts: list[str] = []
    for e, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if e == 0 else ("h" if e == 1 else f"h^{e}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_format_rational(mag)}*{mono}"
        else:
            body = _format_rational(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def format_ratfunc(r: RatFunc) -> str:
    num = format_hpoly(r.numerator_coeffs())
    if r.den.degree() == 0:
        return num
    den = format_hpoly(r.denominator_coeffs())
    if sum(1 for c in r.num.coeffs() if c != 0) > 1:
        num = f"({num})"
    if sum(1 for c in r.den.coeffs() if c != 0) > 1 or den.startswith("-") or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


H = RatFunc(fmpq_poly([0, 1]))
