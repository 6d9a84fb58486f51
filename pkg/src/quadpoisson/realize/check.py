"""Relation residuals and linear independence of standard monomials."""

from __future__ import annotations

import random
from fractions import Fraction

from sympy import QQ, factorint

from ..exact.linalg import sparse_rank
from .operators import SYMBOLS, K, OperatorElement

__all__ = ["verify", "independence", "monomial_rank", "ExpansionTooLarge", "BackendMismatch", "PARAMETER_SYMBOLS"]

# symbols specialized to random rationals during the independence test;
# the remaining ones (w, z, u, v, x, y, X) stay indeterminates
PARAMETER_SYMBOLS = ("h", "k", "k1", "k2", "k3", "c", "d", "a", "c1", "c2")
MAX_TERMS = 200_000


class ExpansionTooLarge(RuntimeError):
    pass


class BackendMismatch(TypeError):
    pass


def _triple(obj):
    triple = getattr(obj, "triple", obj)
    triple = tuple(triple)
    if len(triple) != 3 or not all(isinstance(t, OperatorElement) for t in triple):
        raise BackendMismatch("expected three operator elements")
    alg = triple[0].alg
    if any(t.alg is not alg for t in triple):
        raise BackendMismatch("the three operators live in different algebras")
    return triple


def verify(triple, rels=None) -> tuple[OperatorElement, OperatorElement, OperatorElement]:
    """Substitute ``triple`` into each relation and return the residuals.

    ``triple`` may be a :class:`~quadpoisson.realize.catalog.Realization`, in
    which case its own relations are used unless ``rels`` is given.
    ``rels`` may hold ``Relation`` objects, a ``RewritingSystem`` or dicts
    from words to coefficients.
    """
    if rels is None:
        rels = getattr(triple, "relations", None)
        if rels is None:
            raise ValueError("no relations supplied")
    xs = _triple(triple)
    from .catalog import _rewritten, relation_polys

    if hasattr(rels, "rules"):
        rels = _rewritten(rels.rules)
    rels = relation_polys(rels)
    alg = xs[0].alg
    cache: dict = {}

    def word(w):
        if w not in cache:
            out = alg.one()
            for i in w:
                out = out * xs[i]
            cache[w] = out
        return cache[w]

    res = []
    for r in rels:
        acc = alg.zero()
        for w, c in r.items():
            acc = acc + c * word(w)
        res.append(acc)
    return tuple(res)


# ---------------------------------------------------------------------------
# independence
# ---------------------------------------------------------------------------

_GEN_INDEX = {n: i for i, n in enumerate(SYMBOLS)}


def _specializer(rng):
    values = {n: Fraction(rng.randint(2, 97), rng.randint(2, 97)) for n in PARAMETER_SYMBOLS}
    ring = K.ring
    subs = [(ring.gens[_GEN_INDEX[n]], QQ(v.numerator, v.denominator)) for n, v in values.items()]

    def spec(c):
        num = c.numer.subs(subs) if c.numer else c.numer
        den = c.denom.subs(subs)
        if not den:
            raise ZeroDivisionError
        return ring(num), ring(den)

    return values, spec


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _exp_signature(E, spec) -> tuple:
    """Canonical character of ``prod b^(ax x + ay y)`` at the specialization.

    Bases are factored into primes (and the sign) so that equal functions get
    equal signatures.
    """
    acc: dict = {}
    for b, ax, ay in E:
        num, den = spec(b)
        if not num.is_ground or not den.is_ground:
            # still depends on an indeterminate: keep it as a formal base
            key = ("formal", str(num), str(den))
            px, py = acc.get(key, (0, 0))
            acc[key] = (px + ax, py + ay)
            continue
        val = _to_fraction(num.LC) / _to_fraction(den.LC)
        if val == 0:
            raise ZeroDivisionError
        if val < 0:
            px, py = acc.get(-1, (0, 0))
            acc[-1] = ((px + ax) % 2, (py + ay) % 2)
            val = -val
        for prime, e in factorint(val.numerator).items():
            px, py = acc.get(prime, (0, 0))
            acc[prime] = (px + e * ax, py + e * ay)
        for prime, e in factorint(val.denominator).items():
            px, py = acc.get(prime, (0, 0))
            acc[prime] = (px - e * ax, py - e * ay)
    return tuple(sorted(((str(k), v) for k, v in acc.items() if v != (0, 0))))


def _expand(el: OperatorElement, spec, dval):
    """``{specialized key: (num, den)}`` with d folded into the p exponents."""
    out: dict = {}
    for key, c in el.terms.items():
        E, q, r, e, l, m, n = key
        sig = _exp_signature(E, spec)
        r2 = tuple(ri + ei * dval for ri, ei in zip(r, e))
        k2 = (sig, q, r2, l, m, n)
        num, den = spec(c)
        if k2 in out:
            pn, pd = out[k2]
            num, den = pn * den + num * pd, pd * den
        out[k2] = (num, den)
    return out


def independence(triple, D: int, seed: int = 0, max_terms: int = MAX_TERMS) -> bool:
    """Whether the standard monomials ``x1^i x2^j x3^k`` (``i+j+k <= D``) are independent.

    Parameters are specialized to random rationals and the expansion is
    checked for full rank.  Full rank at one point implies full rank
    generically, so ``True`` is a certificate; ``False`` only says the test
    failed at that point.
    """
    rank, n = monomial_rank(triple, D, seed, max_terms)
    return rank == n


def monomial_rank(triple, D: int, seed: int = 0, max_terms: int = MAX_TERMS) -> tuple[int, int]:
    """(rank of the expanded standard monomials of degree <= D, their number)."""
    xs = _triple(triple)
    if D < 0:
        raise ValueError("degree bound must be non-negative")
    alg = xs[0].alg
    monos = [(i, j, D2 - i - j) for D2 in range(D + 1) for i in range(D2, -1, -1) for j in range(D2 - i, -1, -1)]
    pw = [[alg.one()] for _ in range(3)]
    for t in range(3):
        for _ in range(D):
            pw[t].append(pw[t][-1] * xs[t])
    elements = []
    total = 0
    for i, j, k in monos:
        el = pw[0][i] * pw[1][j] * pw[2][k]
        total += len(el.terms)
        if total > max_terms:
            raise ExpansionTooLarge(f"expansion exceeds {max_terms} terms")
        elements.append(el)
    rng = random.Random(seed)
    for _ in range(20):
        values, spec = _specializer(rng)
        dval = Fraction(0)
        if alg.d_symbol is not None:
            dn, dd = spec(alg.d_symbol)
            if not (dn.is_ground and dd.is_ground):
                raise BackendMismatch("the formal exponent d depends on an indeterminate")
            dval = _to_fraction(dn.LC) / _to_fraction(dd.LC)
        try:
            expanded = [_expand(el, spec, dval) for el in elements]
        except ZeroDivisionError:
            continue
        return _rank(expanded), len(monos)
    raise RuntimeError("no admissible specialization found")


def _rank(expanded) -> int:
    dens = [den for ex in expanded for _, den in ex.values()]
    L = dens[0].ring.one if dens else None
    for den in dens:
        L = L.lcm(den)
    rows = []
    for ex in expanded:
        row: dict = {}
        for key, (num, den) in ex.items():
            poly = num * L.exquo(den)
            for mono, c in poly.terms():
                col = (key, mono)
                row[col] = row.get(col, 0) + _to_fraction(c)
        rows.append({c: v for c, v in row.items() if v})
    return sparse_rank(rows, key=repr)
