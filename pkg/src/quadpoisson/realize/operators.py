"""Normal-ordered operator algebras used by the explicit realizations.

One element type covers every backend:

* Weyl pairs ``(p_i, q_i)`` with ``[p_i, q_i] = 1``; words are normal
  ordered with ``q`` on the left and ``p`` on the right.  ``p`` may carry any
  rational exponent, a multiple of a formal exponent ``d`` (when ``d`` is a
  symbol) and powers of ``ln p``.  Products use the symbol calculus
  ``a * b = sum_j (1/j!) d^j a/dp^j  d^j b/dq^j``, which is finite because
  ``q`` only appears with non-negative integer powers.
* lattice shifts ``s_x, s_y`` acting on functions of ``(x, y)`` by
  ``s_x g(x, y) = g(x + 1, y) s_x``; functions are rational functions of
  ``x, y`` times exponentials ``b^(ax*x + ay*y)``.
* central symbols (``w, z, u, v, X`` and parameters) live in the
  coefficient field.

Shifts commute with the Weyl generators, so mixing both gives the tensor
product.  Monomial keys are ``(E, q, r, e, l, m, n)``: exponentials, ``q``
powers, rational ``p`` powers, multiples of ``d``, ``ln p`` powers and the
shift exponents.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb

from sympy import QQ
from sympy.polys.fields import field

__all__ = [
    "K",
    "SYMBOLS",
    "sym",
    "to_field",
    "OperatorAlgebra",
    "OperatorElement",
    "UnsupportedSymbol",
]

SYMBOLS = ("h", "w", "z", "u", "v", "x", "y", "X", "k", "k1", "k2", "k3", "c", "d", "a", "c1", "c2")
K, *_GENS = field(",".join(SYMBOLS), QQ)
_SYM = dict(zip(SYMBOLS, _GENS))
_RING = K.ring
_X, _Y = _RING.gens[SYMBOLS.index("x")], _RING.gens[SYMBOLS.index("y")]


class UnsupportedSymbol(ValueError):
    pass


def sym(name: str):
    """The coefficient-field generator called ``name``."""
    return _SYM[name]


def to_field(c):
    """Coerce ints, Fractions, :class:`RatFunc` (in h) and field elements."""
    from ..exact.ratfunc import RatFunc

    if isinstance(c, RatFunc):
        h = _SYM["h"]
        num = sum((K(QQ(x.numerator, x.denominator)) * h ** i for i, x in enumerate(c.numerator_coeffs())), K.zero)
        den = sum((K(QQ(x.numerator, x.denominator)) * h ** i for i, x in enumerate(c.denominator_coeffs())), K.zero)
        return num / den
    if isinstance(c, Fraction):
        return K(QQ(c.numerator, c.denominator))
    if isinstance(c, int):
        return K(c)
    if getattr(c, "field", None) is K:
        return c
    if isinstance(c, str):
        from sympy import Symbol, sympify

        try:
            expr = sympify(c, locals={n: Symbol(n) for n in SYMBOLS})
            return K.from_expr(expr)
        except Exception as exc:  # sympy raises a variety of types here
            raise UnsupportedSymbol(f"cannot read {c!r} as a coefficient: {exc}") from None
    raise TypeError(f"cannot use {c!r} as a coefficient")


_shift_cache: dict = {}


def shift_coeff(c, m: int, n: int):
    """``c(x + m, y + n)`` for a field element ``c``."""
    if not (m or n) or c.numer.degree(_X) + c.denom.degree(_X) + c.numer.degree(_Y) + c.denom.degree(_Y) <= 0:
        return c
    key = (c, m, n)
    hit = _shift_cache.get(key)
    if hit is not None:
        return hit
    subs = [(_X, _X + m), (_Y, _Y + n)]
    out = K(c.numer.compose(subs)) / K(c.denom.compose(subs))
    if len(_shift_cache) > 50000:
        _shift_cache.clear()
    _shift_cache[key] = out
    return out


def _canon_base(base, ax, ay):
    inv = 1 / base
    rank = lambda b: (b.numer.is_ground and not b.denom.is_ground, len(str(b)), str(b))  # noqa: E731
    if rank(inv) < rank(base):
        return inv, -ax, -ay
    return base, ax, ay


def _merge_exps(E1, E2):
    if not E2:
        return E1
    if not E1:
        return E2
    acc = {b: (ax, ay) for b, ax, ay in E1}
    for b, ax, ay in E2:
        px, py = acc.get(b, (0, 0))
        acc[b] = (px + ax, py + ay)
    return tuple(sorted(((b, ax, ay) for b, (ax, ay) in acc.items() if ax or ay), key=lambda t: str(t[0])))


class OperatorAlgebra:
    """Context fixing the number of Weyl pairs and the formal exponent ``d``.

    ``d`` may be None (no formal power), a rational number (then ``p^d`` is an
    ordinary rational power) or a field element such as ``sym("d")``.
    """

    def __init__(self, pairs: int = 1, d=None):
        self.pairs = pairs
        if isinstance(d, (int, Fraction)):
            self.d_rational, self.d_symbol = Fraction(d), None
        elif d is None:
            self.d_rational = self.d_symbol = None
        else:
            dv = to_field(d)
            if dv.numer.is_ground and dv.denom.is_ground:
                q = dv.numer.LC / dv.denom.LC
                self.d_rational, self.d_symbol = Fraction(int(q.numerator), int(q.denominator)), None
            else:
                self.d_rational, self.d_symbol = None, dv

    # -- constructors -----------------------------------------------------
    def _key(self, E=(), q=None, r=None, e=None, l=None, m=0, n=0):
        z = (0,) * self.pairs
        return (E, q or z, r or tuple(Fraction(0) for _ in range(self.pairs)), e or z, l or z, m, n)

    def element(self, terms) -> "OperatorElement":
        return OperatorElement(self, terms)

    def scalar(self, c) -> "OperatorElement":
        return OperatorElement(self, {self._key(): to_field(c)})

    def one(self):
        return self.scalar(1)

    def zero(self):
        return OperatorElement(self, {})

    def sym(self, name):
        return self.scalar(sym(name))

    def _unit(self, i, pos, value):
        t = [0] * self.pairs
        t[i] = value
        return tuple(t)

    def q(self, i: int = 0):
        return OperatorElement(self, {self._key(q=self._unit(i, 0, 1)): K.one})

    def p_power(self, r, i: int = 0):
        r = Fraction(r)
        t = [Fraction(0)] * self.pairs
        t[i] = r
        return OperatorElement(self, {self._key(r=tuple(t)): K.one})

    def p(self, i: int = 0):
        return self.p_power(1, i)

    def pinv(self, i: int = 0):
        return self.p_power(-1, i)

    @property
    def d(self):
        """The formal exponent as a field element (zero when absent)."""
        if self.d_rational is not None:
            return to_field(self.d_rational)
        return self._d_value()

    def pd(self, i: int = 0):
        """The formal power ``p^d``."""
        if self.d_rational is not None:
            return self.p_power(self.d_rational, i)
        if self.d_symbol is None:
            raise UnsupportedSymbol("this algebra has no formal exponent d")
        return OperatorElement(self, {self._key(e=self._unit(i, 0, 1)): K.one})

    def lnp(self, i: int = 0):
        return OperatorElement(self, {self._key(l=self._unit(i, 0, 1)): K.one})

    def shift(self, m: int = 0, n: int = 0):
        return OperatorElement(self, {self._key(m=m, n=n): K.one})

    @property
    def sx(self):
        return self.shift(1, 0)

    @property
    def sy(self):
        return self.shift(0, 1)

    def exp(self, base, ax: int = 0, ay: int = 0):
        """``base^(ax*x + ay*y)`` as a lattice function."""
        base = to_field(base)
        if base == K.zero:
            raise ValueError("exponential base must be nonzero")
        if base == K.one or not (ax or ay):
            return self.one()
        E = ((*_canon_base(base, ax, ay),),)
        return OperatorElement(self, {self._key(E=E): K.one})

    # -- multiplication ---------------------------------------------------
    def _d_value(self):
        return self.d_symbol if self.d_symbol is not None else K.zero

    def _pair_product(self, qa, ra, ea, la, qb, rb, eb, lb):
        out = []
        cur = [(K.one, ra, la)]
        dval = self._d_value()
        for j in range(qb + 1):
            if not cur:
                break
            cj = comb(qb, j)
            for c, r, l in cur:
                out.append((c * cj, qa + qb - j, r + rb, ea + eb, l + lb))
            nxt: dict = {}
            for c, r, l in cur:
                expo = K(QQ(r.numerator, r.denominator)) + dval * ea
                if expo:
                    nxt[(r - 1, l)] = nxt.get((r - 1, l), K.zero) + c * expo
                if l:
                    nxt[(r - 1, l - 1)] = nxt.get((r - 1, l - 1), K.zero) + c * l
            cur = [(c, r, l) for (r, l), c in nxt.items() if c]
        return out

    def mul_keys(self, ka, kb):
        Ea, qa, ra, ea, la, ma, na = ka
        Eb, qb, rb, eb, lb, mb, nb = kb
        factor = K.one
        if ma or na:
            for b, ax, ay in Eb:
                factor = factor * b ** (ax * ma + ay * na)
        E = _merge_exps(Ea, Eb)
        per_pair = [self._pair_product(qa[i], ra[i], ea[i], la[i], qb[i], rb[i], eb[i], lb[i]) for i in range(self.pairs)]
        out = []
        for combo in product(*per_pair):
            c = factor
            for t in combo:
                c = c * t[0]
            key = (E, tuple(t[1] for t in combo), tuple(t[2] for t in combo),
                   tuple(t[3] for t in combo), tuple(t[4] for t in combo), ma + mb, na + nb)
            out.append((c, key))
        return out


class OperatorElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: OperatorAlgebra, terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    def _lift(self, other):
        if isinstance(other, OperatorElement):
            if other.alg is not self.alg:
                raise ValueError("operands belong to different operator algebras")
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, K.zero) + v
        return OperatorElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return OperatorElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        alg = self.alg
        for ka, ca in self.terms.items():
            ma, na = ka[5], ka[6]
            for kb, cb in other.terms.items():
                cb_s = shift_coeff(cb, ma, na)
                for c, key in alg.mul_keys(ka, kb):
                    out[key] = out.get(key, K.zero) + ca * cb_s * c
        return OperatorElement(alg, out)

    def __rmul__(self, other):
        return self._lift(other) * self

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def commutator(self, other):
        other = self._lift(other)
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, OperatorElement):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_operator(self)

    __repr__ = __str__


def _lin(ax, ay) -> str:
    parts = []
    for coef, var in ((ax, "x"), (ay, "y")):
        if not coef:
            continue
        mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
        sign = "-" if coef < 0 else ("+" if parts else "")
        parts.append(f"{sign}{mag}{var}")
    return "".join(parts)


def _power(base: str, expo: str) -> str:
    if expo == "1":
        return base
    if expo.isdigit():
        return f"{base}^{expo}"
    return f"{base}^({expo})"


def _expr(c) -> str:
    return str(c.as_expr()).replace("**", "^")


def _fmt_key(key, pairs) -> str:
    E, q, r, e, l, m, n = key
    parts = []
    for b, ax, ay in E:
        parts.append(f"({_expr(b)})^({_lin(ax, ay)})")
    for i in range(pairs):
        sfx = str(i + 1) if pairs > 1 else ""
        if q[i]:
            parts.append(_power(f"q{sfx}", str(q[i])))
        expo = []
        if r[i]:
            expo.append(str(r[i]))
        if e[i]:
            expo.append("d" if e[i] == 1 else f"{e[i]}*d")
        if expo:
            parts.append(_power(f"p{sfx}", " + ".join(expo)))
        if l[i]:
            parts.append(_power(f"ln(p{sfx})", str(l[i])))
    if m:
        parts.append(_power("s_x", str(m)))
    if n:
        parts.append(_power("s_y", str(n)))
    return "*".join(parts)


def _sort_key(key):
    E, q, r, e, l, m, n = key
    return (str(E), q, r, e, l, m, n)


def format_operator(el: OperatorElement) -> str:
    if not el.terms:
        return "0"
    out = []
    for key in sorted(el.terms, key=_sort_key):
        c = el.terms[key]
        mono = _fmt_key(key, el.alg.pairs)
        cs = _expr(c)
        if not mono:
            out.append(f"({cs})")
        elif c == K.one:
            out.append(mono)
        else:
            out.append(f"({cs})*{mono}")
    return " + ".join(out)
