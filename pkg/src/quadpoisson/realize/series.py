"""Formal-series realization for the smooth cubic (orbit 10).

Elements of ``B = Q(v)[p][[h, q]]`` with ``[p, q] = h`` are written
``sum h^i q^j g_ij(p)`` with ``q`` to the left of the ``p``-polynomial.
Moving ``g(p)`` past ``q^l`` uses

    g(p) q^l = sum_m h^m C(l, m) q^(l-m) g^(m)(p),

so products keep the total ``(h, q)``-degree and never lower the
``h``-degree.  Everything is truncated at a fixed total degree.

The cubic is ``H = x3^2 x1 + c1 x1 x2^2 + c2 x1^2 x2 + x2^3``; the three
relations are the mechanical quantization of its bracket.  With ``x3 = p``
the ``[x2, x3]`` and ``[x3, x1]`` relations determine every coefficient
carrying ``q``; the free ``q``-free coefficients are fixed by
``x_{1,i,0} = 0``, ``x_{2,0,0} = v`` and by killing the ``q``-free part of
``[x1, x2] - h x1 o x3`` order by order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from sympy import QQ
from sympy.polys.fields import field
from sympy.polys.rings import ring

from ..bracket import from_case
from ..exact.poly import Poly
from ..quantize import relations as quantized_relations

__all__ = ["SeriesElement", "Case10Solution", "solve_case10", "orbit10_cubic", "FV", "RP"]

FV, V = field("v", QQ)
RP, P = ring("p", FV)


def _integrate(g):
    out = RP.zero
    for (e,), c in g.terms():
        out += RP({(e + 1,): c / (e + 1)})
    return out


class SeriesElement:
    """Truncated series ``sum h^i q^j g_ij(p)`` with ``i + j <= order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: dict, order: int):
        self.order = order
        self.coeffs = {k: RP(v) for k, v in coeffs.items() if v and k[0] + k[1] <= order}

    @classmethod
    def const(cls, c, order):
        return cls({(0, 0): RP(c)}, order)

    @classmethod
    def p(cls, order):
        return cls({(0, 0): P}, order)

    @classmethod
    def q(cls, order):
        return cls({(0, 1): RP.one}, order)

    @classmethod
    def hbar(cls, order):
        return cls({(1, 0): RP.one}, order)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, RP.zero) + v
        return SeriesElement(out, min(self.order, other.order))

    def __neg__(self):
        return SeriesElement({k: -v for k, v in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SeriesElement({k: v * c for k, v in self.coeffs.items()}, self.order)

    def shift_h(self, e: int = 1):
        """Multiply by ``h^e`` (known up to ``order + e``)."""
        return SeriesElement({(i + e, j): v for (i, j), v in self.coeffs.items()}, self.order + e)

    def __mul__(self, other):
        N = min(self.order, other.order)
        out: dict = {}
        for (i, j), a in self.coeffs.items():
            derivs = [a]
            for (k, l), b in other.coeffs.items():
                if i + j + k + l > N:
                    continue
                while len(derivs) <= l:
                    derivs.append(derivs[-1].diff(P))
                for m in range(l + 1):
                    am = derivs[m]
                    if not am:
                        break
                    key = (i + k + m, j + l - m)
                    out[key] = out.get(key, RP.zero) + comb(l, m) * am * b
        return SeriesElement(out, N)

    def commutator(self, other):
        return self * other - other * self

    def coeff(self, i: int, j: int):
        return self.coeffs.get((i, j), RP.zero)

    def truncate(self, order: int):
        return SeriesElement(self.coeffs, order)

    def low_part(self, degree: int):
        """Terms of total degree at most ``degree``."""
        return {k: v for k, v in self.coeffs.items() if k[0] + k[1] <= degree}

    def is_zero(self) -> bool:
        return not self.coeffs

    def h_valuation(self):
        return min((i for i, _ in self.coeffs), default=None)

    def __eq__(self, other):
        return isinstance(other, SeriesElement) and self.coeffs == other.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs, key=lambda k: (k[0] + k[1], k)):
            mono = "*".join(s for s in (
                "" if i == 0 else ("h" if i == 1 else f"h^{i}"),
                "" if j == 0 else ("q" if j == 1 else f"q^{j}"),
            ) if s)
            g = str(self.coeffs[(i, j)].as_expr()).replace("**", "^")
            parts.append(f"({g})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


def orbit10_cubic(c1, c2) -> Poly:
    x1, x2, x3 = Poly.gens()
    c1, c2 = Fraction(c1), Fraction(c2)
    return x3 * x3 * x1 + (x1 * x2 * x2).scale(c1) + (x1 * x1 * x2).scale(c2) + x2 ** 3


def _relation_table(c1, c2):
    """Each relation as ``[(word, h-power, rational)]``."""
    b = from_case("a", orbit10_cubic(c1, c2))
    table = []
    for r in quantized_relations(b):
        rows = []
        for w, c in r.terms.items():
            if any(d != 0 for d in c.denominator_coeffs()[1:]):
                raise ValueError("relation coefficients must be polynomial in h")
            d0 = c.denominator_coeffs()[0]
            for e, a in enumerate(c.numerator_coeffs()):
                if a:
                    rows.append((w, e, Fraction(a) / d0))
        table.append(rows)
    return table


def _evaluate(table, xs, order):
    out = []
    cache: dict = {}
    for rows in table:
        acc = SeriesElement({}, order)
        for w, e, a in rows:
            if w not in cache:
                prod = xs[w[0]]
                for i in w[1:]:
                    prod = prod * xs[i]
                cache[w] = prod
            acc = acc + cache[w].shift_h(e).scale(QQ(a.numerator, a.denominator))
        out.append(acc.truncate(order))
    return out


def _rhs(table_row, xs, order):
    """``-(h-part)`` of a relation, i.e. ``h * y_ij`` evaluated on ``xs``."""
    acc = SeriesElement({}, order)
    for w, e, a in table_row:
        if e == 0:
            continue
        prod = xs[w[0]]
        for i in w[1:]:
            prod = prod * xs[i]
        acc = acc + prod.shift_h(e).scale(QQ(-a.numerator, a.denominator))
    return acc.truncate(order)


@dataclass
class Case10Solution:
    triple: tuple
    residual: tuple
    u_value: object
    deltas: list
    order: int

    def __iter__(self):
        return iter((self.triple, self.residual, self.u_value))

    def ok(self) -> bool:
        return all(r.is_zero() for r in self.residual) and all(not d for d in self.deltas)

    def to_report(self) -> dict:
        return {
            "order": self.order,
            "u": str(self.u_value.as_expr()).replace("**", "^"),
            "x1": str(self.triple[0]),
            "x2": str(self.triple[1]),
            "x3": str(self.triple[2]),
            "residual_zero": [r.is_zero() for r in self.residual],
            "delta_zero": [not d for d in self.deltas],
        }


def solve_case10(c1, c2, N: int) -> Case10Solution:
    """Solve the orbit-10 relations modulo total degree ``N + 1``."""
    if N < 2:
        raise ValueError("truncation order must be at least 2")
    table = _relation_table(c1, c2)
    M = N + 1  # one extra degree to fix the last free coefficient
    x1c: dict = {}
    x2c: dict = {(0, 0): RP(V)}
    x3 = SeriesElement.p(M)

    def elems(order):
        return SeriesElement(x1c, order), SeriesElement(x2c, order), x3.truncate(order)

    deltas = []
    for T in range(0, M):
        if T == 0:
            # x_{2,0,0} = v is fixed; Delta_1 must vanish by itself
            _refill(table, x1c, x2c, x3, 0)
            deltas.append(_evaluate(table[:1], elems(1), 1)[0].coeff(1, 0))
            continue

        # x_{2,T,0} is fixed by the q-free degree-(T+1) part of the first
        # relation; the dependence is affine with a constant multiple of
        # d/dp, found by probing with 0 and p
        def delta_with(g):
            x2c[(T, 0)] = g
            rebuilt = _refill(table, x1c, x2c, x3, T)
            return _evaluate(table[:1], rebuilt, T + 1)[0].coeff(T + 1, 0)

        d0 = delta_with(RP.zero)
        slope = delta_with(P) - d0
        if not slope or slope.degree() > 0:
            raise ArithmeticError(f"unexpected dependence of Delta_{T + 1} on x_(2,{T},0)")
        d_final = delta_with(_integrate(-d0 * (1 / slope.LC)))
        if T + 1 <= N:
            deltas.append(d_final)

    triple = tuple(e.truncate(N) for e in elems(N))
    residual = tuple(r.truncate(N) for r in _evaluate(table, triple, N))
    lead = orbit10_cubic(c1, c2)
    u = _hevaluate(lead, x1c.get((0, 0), RP.zero), x2c[(0, 0)], P)
    if u.degree() > 0:
        raise ArithmeticError("H(x_(1,0,0), x_(2,0,0), p) depends on p")
    return Case10Solution(triple, residual, u.LC if u else FV.zero, deltas, N)


def _refill(table, x1c, x2c, x3, T):
    """Recompute the degree-(T + 1) coefficients carrying q after a change at degree T."""
    xs = (SeriesElement(x1c, T), SeriesElement(x2c, T), x3.truncate(T))
    y23h = _rhs(table[1], xs, T + 1)
    y31h = _rhs(table[2], xs, T + 1)
    for a in range(0, T + 1):
        b = T - a
        x2c[(a, b + 1)] = -y23h.coeff(a + 1, b) * QQ(1, b + 1)
        x1c[(a, b + 1)] = y31h.coeff(a + 1, b) * QQ(1, b + 1)
    return SeriesElement(x1c, T + 1), SeriesElement(x2c, T + 1), x3.truncate(T + 1)


def _hevaluate(poly: Poly, a, b, c):
    out = RP.zero
    for (e1, e2, e3), coef in poly.terms.items():
        term = RP(QQ(Fraction(coef).numerator, Fraction(coef).denominator))
        for base, e in ((a, e1), (b, e2), (c, e3)):
            if e:
                term = term * base ** e
        out += term
    return out
