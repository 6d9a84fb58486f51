"""Sparse commutative polynomials with exact coefficients.

A :class:`Poly` maps exponent tuples over a declared variable list to
coefficients.  Coefficients may be ``int``/``Fraction`` or
:class:`~quadpoisson.exact.ratfunc.RatFunc`; arithmetic only relies on the
field operations.  Negative exponents are permitted (Laurent monomials) so
the same type can carry central symbols such as ``v**-1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

__all__ = ["Poly", "DEFAULT_VARS", "ArityError"]

DEFAULT_VARS = ("x1", "x2", "x3")


class ArityError(ValueError):
    """Operands are declared over different variable lists."""


def _clean(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


class Poly:
    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[tuple, object] | None = None, vars: Iterable[str] = DEFAULT_VARS):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ArityError(f"exponent {mono} does not match variables {self.vars}")
            if c:
                clean[mono] = _clean(c)
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def var(cls, name: str, vars: Iterable[str] = DEFAULT_VARS) -> "Poly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls({tuple(e): 1}, vars)

    @classmethod
    def const(cls, c, vars: Iterable[str] = DEFAULT_VARS) -> "Poly":
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def gens(cls, vars: Iterable[str] = DEFAULT_VARS) -> tuple["Poly", ...]:
        vars = tuple(vars)
        return tuple(cls.var(v, vars) for v in vars)

    def zero(self) -> "Poly":
        return Poly({}, self.vars)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var) -> int:
        i = self._index(var)
        return max((m[i] for m in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def coeff(self, mono) -> object:
        return self.terms.get(tuple(mono), Fraction(0))

    def monomials(self) -> list[tuple]:
        return sorted(self.terms, key=_order_key, reverse=True)

    def items(self):
        return ((m, self.terms[m]) for m in self.monomials())

    def _index(self, var) -> int:
        if isinstance(var, int):
            return var
        return self.vars.index(var)

    def _check(self, other: "Poly"):
        if self.vars != other.vars:
            raise ArityError(f"variable lists differ: {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(other, self.vars)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly(out, self.vars)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Poly":
        if not c:
            return self.zero()
        return Poly({m: c * v for m, v in self.terms.items()}, self.vars)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def diff(self, var, times: int = 1) -> "Poly":
        """Formal partial derivative; ``var`` is a name or 0-based index."""
        i = self._index(var)
        out = self
        for _ in range(times):
            terms = {}
            for m, c in out.terms.items():
                if m[i] == 0:
                    continue
                e = list(m)
                e[i] -= 1
                terms[tuple(e)] = c * m[i]
            out = Poly(terms, self.vars)
        return out

    def substitute(self, images: Mapping[str, "Poly"] | None = None, target_vars=None) -> "Poly":
        """Replace variables by polynomials (over ``target_vars``).

        Variables without an image map to themselves, which requires them to
        exist in ``target_vars``.
        """
        images = dict(images or {})
        target_vars = tuple(target_vars) if target_vars is not None else self.vars
        gens = {}
        for v in self.vars:
            if v in images:
                img = images[v]
                gens[v] = img if isinstance(img, Poly) else Poly.const(img, target_vars)
            else:
                gens[v] = Poly.var(v, target_vars)
        out = Poly({}, target_vars)
        cache: dict = {}
        for m, c in self.terms.items():
            term = Poly.const(c, target_vars)
            for v, e in zip(self.vars, m):
                if e == 0:
                    continue
                if e < 0:
                    raise ValueError("cannot substitute into a negative power")
                key = (v, e)
                if key not in cache:
                    cache[key] = gens[v] ** e
                term = term * cache[key]
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, object]):
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(self.vars, m):
                if e:
                    t = t * point[v] ** e
            total = total + t
        return total

    def map_coeffs(self, f) -> "Poly":
        return Poly({m: f(c) for m, c in self.terms.items()}, self.vars)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly({m: c for m, c in self.terms.items() if sum(m) == d}, self.vars)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if not self.terms:
            return other == 0
        return self.terms == {(0,) * len(self.vars): other}

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        from ..lang import format_poly

        return format_poly(self)


def _order_key(m):
    return (sum(m), m)
