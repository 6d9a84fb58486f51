"""Explicit operator realizations of the quantized algebras.

Every entry returns a :class:`Realization`: three operators together with
the three degree-2 relations they are meant to satisfy.  By default the
relations are the mechanical quantization (see
:func:`quadpoisson.quantize.relations`) of the case's canonical bracket, and
the constants ``k, k1, c, d, a`` used by the formulas are read off the
triangularized relations, so they are rational functions of ``h``.  Passing
those constants explicitly (numbers, symbol names or expressions such as
``"(1-h)/(1+h)"``) switches to the rewritten relations with free
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from ..bracket import from_case
from ..classify import family_cubic, orbit_representative
from ..exact.poly import Poly
from ..lang import parse_poly
from ..quantize import relations as quantized_relations, triangularize
from .operators import K, OperatorAlgebra, OperatorElement, sym, to_field

__all__ = [
    "CASE_IDS",
    "DegenerateParams",
    "Realization",
    "catalog",
    "relation_polys",
]

# relation words are tuples of 0-based letters; coefficients live in K
NCPoly = dict


class DegenerateParams(ValueError):
    """The parameters violate a non-degeneracy condition of the formula."""


@dataclass
class Realization:
    case_id: str
    algebra: OperatorAlgebra
    triple: tuple[OperatorElement, OperatorElement, OperatorElement]
    relations: list[NCPoly]
    params: dict = dc_field(default_factory=dict)
    backend: str = "weyl"

    def __iter__(self):
        return iter(self.triple)

    def to_report(self) -> dict:
        from ..lang import format_operator

        return {
            "case": self.case_id,
            "backend": self.backend,
            "params": {k: str(v.as_expr()).replace("**", "^") if hasattr(v, "as_expr") else str(v)
                       for k, v in sorted(self.params.items())},
            "x1": format_operator(self.triple[0]),
            "x2": format_operator(self.triple[1]),
            "x3": format_operator(self.triple[2]),
        }


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def relation_polys(rels) -> list[NCPoly]:
    """Relations (``Relation`` objects or dicts) with coefficients moved into K."""
    out = []
    for r in rels:
        terms = r.terms if hasattr(r, "terms") else r
        out.append({tuple(w): to_field(c) for w, c in terms.items()})
    return out


def _rewritten(rules: dict) -> list[NCPoly]:
    """``{(j, i): {word: coeff}}`` read as ``x_j x_i = sum coeff * word``."""
    out = []
    for w, rhs in rules.items():
        rel = {w: K.one}
        for u, c in rhs.items():
            rel[u] = rel.get(u, K.zero) - to_field(c)
        out.append({u: c for u, c in rel.items() if c})
    return out


def _rules_of(b):
    rs = triangularize(quantized_relations(b))
    return {w: {u: to_field(c) for u, c in r.items()} for w, r in rs.rules.items()}


def _coef(rules, w, u):
    return rules[w].get(u, K.zero)


def _expect(rules, shape: dict, case_id: str):
    """Check that the triangularized rules only use the words in ``shape``."""
    for w, allowed in shape.items():
        extra = [u for u in rules[w] if u not in allowed]
        if extra:
            raise DegenerateParams(f"{case_id}: rule for x{w[0] + 1}x{w[1] + 1} has unexpected words {extra}")


def _nonzero(value, condition: str):
    if value == K.zero:
        raise DegenerateParams(condition)
    return value


def _explicit(params: dict, names: tuple[str, ...]):
    """All of ``names`` converted to K when every one was given, else None."""
    if all(n in params for n in names):
        return {n: to_field(params[n]) for n in names}
    given = [n for n in names if n in params]
    if given:
        missing = [n for n in names if n not in params]
        raise DegenerateParams(f"explicit constants need all of {names}; missing {missing}")
    return None


def _rational(params, name, default=None):
    if name not in params:
        if default is None:
            raise DegenerateParams(f"missing parameter {name}")
        return Fraction(default)
    v = params[name]
    return v if isinstance(v, Fraction) else Fraction(v)


def _poly_param(params, name, default: Poly) -> Poly:
    v = params.get(name, default)
    return parse_poly(v) if isinstance(v, str) else v


def _poly_at(poly: Poly, gens) -> OperatorElement:
    """A commutative polynomial evaluated at commuting operators."""
    alg = gens[0].alg
    out = alg.zero()
    for mono, c in poly.terms.items():
        term = alg.scalar(Fraction(c))
        for g, e in zip(gens, mono):
            term = term * g ** e
        out = out + term
    return out


# ---------------------------------------------------------------------------
# rank zero: orbits 1-9 and rank one
# ---------------------------------------------------------------------------

def _derivation_type(case_id, b, y23: Poly, y31: Poly):
    alg = OperatorAlgebra(pairs=2)
    p1, p2, q1, q2 = alg.p(0), alg.p(1), alg.q(0), alg.q(1)
    hb = alg.sym("h")
    x3 = hb * (q2 * _poly_at(y23, (p1, p2, alg.zero())) - q1 * _poly_at(y31, (p1, p2, alg.zero()))) + alg.sym("z")
    rels = relation_polys(quantized_relations(b))
    return Realization(case_id, alg, (p1, p2, x3), rels, {}, "weyl2")


def _orbit_low(case_id, params):
    n = int(case_id[-1])
    f = orbit_representative(n)
    b = from_case("a", f)
    return _derivation_type(case_id, b, b.y(1, 2), b.y(2, 0))


def _rank1(case_id, params):
    f = _poly_param(params, "f", Poly())
    if f and any(m[2] for m in f.terms):
        raise DegenerateParams("rank1: f must not involve x3")
    b = from_case("b", f)
    return _derivation_type(case_id, b, b.y(1, 2), b.y(2, 0))


def _orbit5(case_id, params):
    alg = OperatorAlgebra(1)
    p, q, pinv = alg.p(), alg.q(), alg.pinv()
    hb, w, z = alg.sym("h"), alg.sym("w"), alg.sym("z")
    g = hb * q + w
    x3 = -(g * g) * p - hb * g + Fraction(1, 3) * hb * hb * pinv + z * p * p
    b = from_case("a", orbit_representative(5))
    return Realization(case_id, alg, (pinv, -g, x3), relation_polys(quantized_relations(b)), {}, "weyl")


def _orbit6(case_id, params):
    alg = OperatorAlgebra(1)
    p, q, pinv = alg.p(), alg.q(), alg.pinv()
    hb, w, z = alg.sym("h"), alg.sym("w"), alg.sym("z")
    g = hb * q + w
    x3 = g ** 3 * p * p + 3 * hb * g * g * p + z * p * p
    b = from_case("a", orbit_representative(6))
    return Realization(case_id, alg, (pinv, -g, x3), relation_polys(quantized_relations(b)), {}, "weyl")


def _orbit789(case_id, params):
    given = _explicit(params, ("k", "c", "d"))
    if given is None:
        b = from_case("a", orbit_representative(int(case_id[-1])))
        rules = _rules_of(b)
        _expect(rules, {(1, 0): [(0, 1)], (2, 1): [(1, 2), (0, 0)], (2, 0): [(0, 2), (1, 1)]}, case_id)
        k = _coef(rules, (1, 0), (0, 1))
        kc = dict(k=k, c=_coef(rules, (2, 1), (0, 0)), d=_coef(rules, (2, 0), (1, 1)))
        if _coef(rules, (2, 1), (1, 2)) != k or _coef(rules, (2, 0), (0, 2)) * k != K.one:
            raise DegenerateParams(f"{case_id}: relations are not of the skew quantum-plane shape")
        rels = relation_polys(quantized_relations(b))
    else:
        kc = given
        k = kc["k"]
        rels = _rewritten({(1, 0): {(0, 1): k}, (2, 1): {(1, 2): k, (0, 0): kc["c"]},
                           (2, 0): {(0, 2): 1 / _nonzero(k, "k = 0"), (1, 1): kc["d"]}})
    k, c, d = kc["k"], kc["c"], kc["d"]
    _nonzero(k, "k = 0")
    denom = _nonzero(1 - k ** 3, "1 - k^3 = 0")
    alg = OperatorAlgebra(1)
    s, sinv2 = alg.shift(1), alg.shift(-2)
    w, z = sym("w"), sym("z")
    kx = alg.exp(k, 1)
    x1 = s
    x2 = w * alg.exp(k, -1) * s
    x3 = (k / denom) * (c / w * kx - d * w * w * k * alg.exp(k, -2)) * s + z * kx * sinv2
    return Realization(case_id, alg, (x1, x2, x3), rels, kc, "shift")


# ---------------------------------------------------------------------------
# rank two
# ---------------------------------------------------------------------------

def _rank2_first(case_id, params):
    given = _explicit(params, ("k", "k1", "c"))
    if given is None:
        lam = _rational(params, "lam", 1)
        b = from_case("ca", family_cubic("ca", c1=_rational(params, "c1", 1), c2=_rational(params, "c2", 1)), lam=lam)
        rules = _rules_of(b)
        _expect(rules, {(1, 0): [(0, 1)], (2, 1): [(1, 2), (0, 0)], (2, 0): [(0, 2)]}, case_id)
        kc = dict(k=_coef(rules, (1, 0), (0, 1)), k1=_coef(rules, (2, 1), (1, 2)), c=_coef(rules, (2, 1), (0, 0)))
        if _coef(rules, (2, 0), (0, 2)) * kc["k"] != K.one:
            raise DegenerateParams(f"{case_id}: x3x1 rule is not k^-1 x1x3")
        rels = relation_polys(quantized_relations(b))
    else:
        kc = given
        rels = _rewritten({(1, 0): {(0, 1): kc["k"]}, (2, 1): {(1, 2): kc["k1"], (0, 0): kc["c"]},
                           (2, 0): {(0, 2): 1 / _nonzero(kc["k"], "k = 0")}})
    k, k1, c = kc["k"], kc["k1"], kc["c"]
    _nonzero(k, "k = 0")
    _nonzero(k1, "k1 = 0")
    denom = _nonzero(1 - k1 * k * k, "1 - k1*k^2 = 0")
    alg = OperatorAlgebra(1)
    w, z = sym("w"), sym("z")
    sx, sy = alg.sx, alg.sy
    x1 = sx
    x2 = w * alg.exp(k, -1, 1) * alg.exp(k1, 0, 1) * sx
    x3 = (c / w / denom * k) * alg.exp(k, 1, -1) * alg.exp(k1, 0, -1) * sx + z * alg.exp(k, 1) * sy
    return Realization(case_id, alg, (x1, x2, x3), rels, kc, "shift")


def _rank2_second(case_id, params):
    c1 = to_field(params.get("c1", 1))
    c2 = to_field(params.get("c2", 0))
    rels = None
    if all(v.numer.is_ground and v.denom.is_ground for v in (c1, c2)):
        q1, q2 = (Fraction(int(v.numer.LC.numerator), int(v.numer.LC.denominator)) / Fraction(
            int(v.denom.LC.numerator), int(v.denom.LC.denominator)) for v in (c1, c2))
        b = from_case("cb", family_cubic("cb", c1=q1, c2=q2))
        rels = relation_polys(quantized_relations(b))
    else:
        rels = _cb_relations(c1, c2)
    hb = sym("h")
    if c1 == K.zero:
        alg = OperatorAlgebra(1)
        X, w, z = alg.sym("X"), alg.sym("w"), alg.sym("z")
        t = alg.q() * alg.p()
        g = hb * t + w
        x2 = -X * g
        x3 = X * (Fraction(1, 2) * g * g - 3 * c2 + z * alg.p())
        regime = "c1 = 0"
        return Realization(case_id, alg, (X, x2, x3), rels, {"c1": c1, "c2": c2, "regime": regime}, "weyl")
    lead = c1 * c1 * hb * hb * (4 * c1 - 1) - 3 * c2
    if 1 - 6 * c1 == K.zero:
        alg = OperatorAlgebra(1)
        p, q, pinv = alg.p(), alg.q(), alg.pinv()
        w, z = alg.sym("w"), alg.sym("z")
        g = hb * q + w
        x3 = 2 * c1 * c1 * (g * g * p + hb * g) + (lead / (2 * c1)) * pinv * alg.lnp() + z * pinv
        regime = "1 - 6*c1 = 0"
        d = None
    else:
        d = 2 - 1 / (2 * c1)
        alg = OperatorAlgebra(1, d=d)
        p, q, pinv = alg.p(), alg.q(), alg.pinv()
        w, z = alg.sym("w"), alg.sym("z")
        g = hb * q + w
        x3 = 2 * c1 * c1 * (g * g * p + hb * g) + (lead / (1 - 6 * c1)) * pinv + z * alg.pd()
        regime = "p^d"
    x1, x2 = pinv, 2 * c1 * g
    out = {"c1": c1, "c2": c2, "regime": regime}
    if d is not None:
        out["d"] = d
    return Realization(case_id, alg, (x1, x2, x3), rels, out, "weyl")


def _cb_relations(c1, c2) -> list[NCPoly]:
    """Quantized second-subcase relations with field-valued c1, c2."""
    hb = sym("h")

    def anti(i, j, s):
        return {(i, j): s, (j, i): s}

    def add(*parts):
        out: dict = {}
        for p in parts:
            for w, c in p.items():
                out[w] = out.get(w, K.zero) + c
        return {w: c for w, c in out.items() if c}

    f12 = add({(0, 1): K.one, (1, 0): -K.one}, {(0, 0): 2 * c1 * hb})
    f23 = add({(1, 2): K.one, (2, 1): -K.one}, anti(0, 2, -hb * (K.one / 2 - 2 * c1)),
              {(1, 1): -hb * (c1 - K.one / 2), (0, 0): -3 * c2 * hb})
    f31 = add({(2, 0): K.one, (0, 2): -K.one}, anti(0, 1, -hb * c1))
    return [f12, f23, f31]


# ---------------------------------------------------------------------------
# rank three
# ---------------------------------------------------------------------------

def _quantum_space(case_id, params):
    given = _explicit(params, ("k1", "k2", "k3"))
    if given is None:
        source = params.get("source", "da")
        if source == "da":
            b = from_case("da", family_cubic("da", c=_rational(params, "c", 0)),
                          lam1=_rational(params, "lam1", 1), lam2=_rational(params, "lam2", 2))
        elif source == "db":
            f = _poly_param(params, "f", Poly())
            b = from_case("db", f, lam=_rational(params, "lam", 1))
        else:
            raise DegenerateParams(f"unknown source {source!r} for the quantum space")
        rules = _rules_of(b)
        _expect(rules, {(1, 0): [(0, 1)], (2, 1): [(1, 2)], (2, 0): [(0, 2)]}, case_id)
        kc = dict(k3=_coef(rules, (1, 0), (0, 1)), k1=_coef(rules, (2, 1), (1, 2)), k2=_coef(rules, (2, 0), (0, 2)))
        rels = relation_polys(quantized_relations(b))
    else:
        kc = given
        rels = _rewritten({(1, 0): {(0, 1): kc["k3"]}, (2, 1): {(1, 2): kc["k1"]}, (2, 0): {(0, 2): kc["k2"]}})
    for n in ("k1", "k2", "k3"):
        _nonzero(kc[n], f"{n} = 0")
    alg = OperatorAlgebra(1)
    x1 = alg.sx
    x2 = alg.exp(kc["k3"], -1) * alg.sy
    x3 = sym("z") * alg.exp(kc["k2"], -1) * alg.exp(kc["k1"], 0, -1)
    return Realization(case_id, alg, (x1, x2, x3), rels, kc, "shift")


def _third_subcase(case_id, params):
    given = _explicit(params, ("a", "k", "k1"))
    if given is None:
        source = params.get("source", "dc")
        if source == "dc":
            b = from_case("dc", family_cubic("dc", c=_rational(params, "c", 1)), lam=_rational(params, "lam", 1))
        elif source == "db":
            x1, x2, x3 = Poly.gens()
            b = from_case("db", x1 * x1 * x3, lam=_rational(params, "lam", 1))
        else:
            raise DegenerateParams(f"unknown source {source!r} for the third subcase")
        rules = _rules_of(b)
        _expect(rules, {(1, 0): [(0, 1), (0, 0)], (2, 1): [(1, 2), (0, 2)], (2, 0): [(0, 2)]}, case_id)
        if _coef(rules, (1, 0), (0, 1)) != K.one:
            raise DegenerateParams(f"{case_id}: x2x1 rule is not x1x2 - a x1^2")
        kc = dict(a=-_coef(rules, (1, 0), (0, 0)), k=_coef(rules, (2, 0), (0, 2)), k1=_coef(rules, (2, 1), (0, 2)))
        if _coef(rules, (2, 1), (1, 2)) != kc["k"]:
            raise DegenerateParams(f"{case_id}: x3x2 rule is not (k x2 + k1 x1) x3")
        rels = relation_polys(quantized_relations(b))
    else:
        kc = given
        rels = _rewritten({(1, 0): {(0, 1): 1, (0, 0): -kc["a"]}, (2, 1): {(1, 2): kc["k"], (0, 2): kc["k1"]},
                           (2, 0): {(0, 2): kc["k"]}})
    a, k, k1 = kc["a"], kc["k"], kc["k1"]
    _nonzero(k, "k = 0")
    w, z = sym("w"), sym("z")
    if a == K.zero:
        alg = OperatorAlgebra(1)
        kx = alg.exp(k, 1)
        x1 = w * kx
        x2 = (w * k1 / k) * alg.sym("x") * kx
        x3 = alg.sx
        return Realization(case_id, alg, (x1, x2, x3), rels, kc, "shift")
    d = -k1 / (k * a)
    alg = OperatorAlgebra(1, d=d)
    s = alg.sx
    x1 = alg.pinv() * s
    x2 = -(a * alg.q() + w) * s
    x3 = z * alg.pd() * alg.exp(k, -1)
    return Realization(case_id, alg, (x1, x2, x3), rels, {**kc, "d": d}, "weyl x shift")


_ENTRIES = {
    "orbit1": _orbit_low,
    "orbit2": _orbit_low,
    "orbit3": _orbit_low,
    "orbit4": _orbit_low,
    "rank1": _rank1,
    "orbit5": _orbit5,
    "orbit6": _orbit6,
    "orbit7": _orbit789,
    "orbit8": _orbit789,
    "orbit9": _orbit789,
    "rank2-first": _rank2_first,
    "rank2-second": _rank2_second,
    "rank3-quantum": _quantum_space,
    "rank3-third": _third_subcase,
}
CASE_IDS = tuple(_ENTRIES)


def catalog(case_id: str, **params) -> Realization:
    """Realization of ``case_id`` (see :data:`CASE_IDS`).

    Keyword parameters by case: ``rank1``: ``f`` (form in x1, x2);
    ``orbit7..9``: optionally ``k, c, d``; ``rank2-first``: ``lam, c1, c2``
    or ``k, k1, c``; ``rank2-second``: ``c1, c2``; ``rank3-quantum``:
    ``lam1, lam2, c`` (or ``source="db", lam, f``) or ``k1, k2, k3``;
    ``rank3-third``: ``c, lam`` (or ``source="db", lam``) or ``a, k, k1``.
    """
    try:
        build = _ENTRIES[case_id]
    except KeyError:
        raise ValueError(f"unknown catalog entry {case_id!r}; choose from {', '.join(CASE_IDS)}") from None
    return build(case_id, params)
