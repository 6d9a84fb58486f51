"""Quantized relations, their rewriting system and graded dimensions.

Noncommutative polynomials in ``x1, x2, x3`` are plain dicts mapping words
(tuples of 0-based letters) to coefficients in Q(h).  A bracket with
structure constants ``c`` is quantized to the three relations

    f_ij = x_i x_j - x_j x_i - (h/2) sum_kl c_ij^kl (x_k x_l + x_l x_k)

for ``(i, j) = (1, 2), (2, 3), (3, 1)``, i.e. ``[x_i, x_j] = h sum c x_k o x_l``
with ``o`` the half anticommutator.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb

from .bracket import PAIRS, QuadraticBracket
from .exact.linalg import Matrix, SingularMatrix, echelon, specialize_zero
from .exact.ratfunc import H, RatFunc, as_ratfunc

__all__ = [
    "Relation",
    "RewritingSystem",
    "SingularSystem",
    "NonTerminating",
    "DegreeTooLarge",
    "relations",
    "triangularize",
    "transposition_system",
    "normal_form",
    "diamond_residual",
    "ideal_rows",
    "graded_dimension",
    "word_key",
    "is_standard",
    "nc_mul",
    "nc_add",
    "nc_scale",
]

MAX_DEGREE = 8
NONSTANDARD = ((1, 0), (2, 0), (2, 1))
STANDARD2 = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


class SingularSystem(ArithmeticError):
    """The relations cannot be solved for the three non-standard words."""


class NonTerminating(RuntimeError):
    """Rewriting revisited a word it was still reducing."""


class DegreeTooLarge(ValueError):
    pass


# ---------------------------------------------------------------------------
# noncommutative polynomial helpers
# ---------------------------------------------------------------------------

def nc_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, 0) + scale * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def nc_scale(a: dict, s) -> dict:
    if not s:
        return {}
    return {w: s * c for w, c in a.items()}


def nc_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (u, c), (v, d) in product(a.items(), b.items()):
        w = u + v
        s = out.get(w, 0) + c * d
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def is_standard(word) -> bool:
    return all(word[i] <= word[i + 1] for i in range(len(word) - 1))


def inversions(word) -> int:
    return sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])


def word_key(word):
    """Elimination order on words: more inversions first, then lexicographic."""
    return (inversions(word), word)


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

class Relation:
    """A degree-2 element ``sum coeff * word`` of the tensor square."""

    __slots__ = ("pair", "terms")

    def __init__(self, terms: dict, pair: tuple[int, int] | None = None):
        self.pair = pair
        self.terms = {tuple(w): as_ratfunc(Fraction(c) if isinstance(c, int) else c)
                      for w, c in terms.items() if c}

    def at_zero(self) -> dict:
        return {w: v for w, v in ((w, specialize_zero(c)) for w, c in self.terms.items()) if v}

    def __eq__(self, other):
        return isinstance(other, Relation) and self.terms == other.terms

    def __repr__(self):
        from .lang import format_ncpoly

        name = f"f{self.pair[0] + 1}{self.pair[1] + 1}" if self.pair else "f"
        return f"{name} = {format_ncpoly(self.terms)}"


def relations(b: QuadraticBracket) -> tuple[Relation, Relation, Relation]:
    """The three quantized relations, ordered (1,2), (2,3), (3,1)."""
    out = []
    half_h = H / 2
    for i, j in PAIRS:
        terms: dict = {(i, j): 1, (j, i): -1}
        for k, l in product(range(3), range(3)):
            c = b.c[i][j][k][l]
            if c:
                for w in ((k, l), (l, k)):
                    terms = nc_add(terms, {w: -half_h * c})
        out.append(Relation(terms, (i, j)))
    return tuple(out)


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

class RewritingSystem:
    """Rules ``x2x1 -> ...``, ``x3x1 -> ...``, ``x3x2 -> ...`` in standard words."""

    def __init__(self, rules: dict):
        missing = [w for w in NONSTANDARD if w not in rules]
        if missing:
            raise ValueError(f"missing rules for {missing}")
        clean = {}
        for w in NONSTANDARD:
            rhs = {tuple(u): as_ratfunc(Fraction(c) if isinstance(c, int) else c)
                   for u, c in rules[w].items() if c}
            bad = [u for u in rhs if not is_standard(u) or len(u) != 2]
            if bad:
                raise ValueError(f"rule for {w} uses non-standard words {bad}")
            clean[w] = rhs
        self.rules = clean
        self._cache: dict = {}

    def rule(self, j: int, i: int) -> dict:
        return self.rules[(j, i)]

    def at_zero(self) -> "RewritingSystem":
        return RewritingSystem({w: {u: specialize_zero(c) for u, c in r.items()} for w, r in self.rules.items()})

    def is_transposition(self) -> bool:
        return all(r == {(w[1], w[0]): 1} for w, r in self.rules.items())

    def __eq__(self, other):
        return isinstance(other, RewritingSystem) and self.rules == other.rules

    def lines(self) -> list[str]:
        from .lang import format_ncpoly

        return [f"{format_ncpoly({w: 1})} = {format_ncpoly(self.rules[w])}" for w in NONSTANDARD]

    def __str__(self):
        return "\n".join(self.lines())

    def to_report(self) -> list[str]:
        return self.lines()


def transposition_system() -> RewritingSystem:
    return RewritingSystem({w: {(w[1], w[0]): 1} for w in NONSTANDARD})


def triangularize(rels) -> RewritingSystem:
    """Solve three degree-2 relations for the words x2x1, x3x1, x3x2."""
    rels = [r.terms if isinstance(r, Relation) else Relation(r).terms for r in rels]
    if len(rels) != 3:
        raise ValueError("expected three relations")
    zero = RatFunc(0)
    N = Matrix([[r.get(w, zero) for w in NONSTANDARD] for r in rels])
    S = Matrix([[r.get(w, zero) for w in STANDARD2] for r in rels])
    try:
        Ninv = N.inverse()
    except SingularMatrix:
        raise SingularSystem("the non-standard block of the relations is singular") from None
    sol = -(Ninv * S)
    rules = {}
    for a, w in enumerate(NONSTANDARD):
        rules[w] = {u: sol[a, b] for b, u in enumerate(STANDARD2) if sol[a, b]}
    return RewritingSystem(rules)


def _descent(word, strategy: str):
    idx = range(len(word) - 1) if strategy == "leftmost" else range(len(word) - 2, -1, -1)
    for i in idx:
        if word[i] > word[i + 1]:
            return i
    return None


def normal_form(word, rs: RewritingSystem, strategy: str = "leftmost") -> dict:
    """Fully reduced form of a word (or of a dict ``word -> coeff``)."""
    if isinstance(word, dict):
        out: dict = {}
        for w, c in word.items():
            out = nc_add(out, normal_form(w, rs, strategy), c)
        return out
    word = tuple(word)
    cache = rs._cache.setdefault(strategy, {})
    return dict(_nf_word(word, rs, strategy, cache, set()))


def _nf_word(word, rs, strategy, cache, active):
    hit = cache.get(word)
    if hit is not None:
        return hit
    i = _descent(word, strategy)
    if i is None:
        res = {word: RatFunc(1)}
    else:
        if word in active:
            raise NonTerminating(f"rewriting cycles through {word}")
        active.add(word)
        res = {}
        pre, post = word[:i], word[i + 2:]
        for u, c in rs.rules[(word[i], word[i + 1])].items():
            res = nc_add(res, _nf_word(pre + u + post, rs, strategy, cache, active), c)
        active.discard(word)
    cache[word] = res
    return res


def diamond_residual(rs: RewritingSystem) -> dict:
    """NF(reduce x3x2 first) - NF(reduce x2x1 first) for the overlap x3x2x1."""
    left = normal_form({u + (0,): c for u, c in rs.rules[(2, 1)].items()}, rs)
    right = normal_form({(2,) + u: c for u, c in rs.rules[(1, 0)].items()}, rs)
    return nc_add(left, right, -1)


# ---------------------------------------------------------------------------
# ideal components and graded dimensions
# ---------------------------------------------------------------------------

def _as_terms(r):
    return r.terms if isinstance(r, Relation) else Relation(r).terms


def ideal_rows(rels, k: int, positions=None) -> list[dict]:
    """Spanning family of ``I^k`` (or of the summands at ``positions``).

    Position ``i`` (0-based) places the relation on tensor factors
    ``i, i + 1``; every padding word on the remaining factors is used.
    """
    if k < 2:
        raise ValueError("ideal components start in degree 2")
    if k > MAX_DEGREE:
        raise DegreeTooLarge(f"degree {k} exceeds the supported bound {MAX_DEGREE}")
    terms = [_as_terms(r) for r in rels]
    positions = range(k - 1) if positions is None else positions
    rows = []
    for i in positions:
        for left in product(range(3), repeat=i):
            for right in product(range(3), repeat=k - i - 2):
                for t in terms:
                    rows.append({left + w + right: c for w, c in t.items()})
    return rows


def _zero_rows(rows):
    out = []
    for r in rows:
        z = {w: v for w, v in ((w, specialize_zero(c)) for w, c in r.items()) if v}
        out.append(z)
    return out


def ideal_ranks(rels, k: int) -> tuple[int, int]:
    """(rank at generic h, rank at h = 0) of the spanning family of ``I^k``."""
    rows = ideal_rows(rels, k)
    generic = len(echelon(rows, word_key))
    zero = len(echelon(_zero_rows(rows), word_key))
    return generic, zero


def graded_dimension(rels, d: int) -> tuple[int, int]:
    """Dimension of the degree-``d`` part of the quotient, generic and at h = 0."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    if d < 2:
        return (3 ** d, 3 ** d)
    g, z = ideal_ranks(rels, d)
    return 3 ** d - g, 3 ** d - z


def pbw_dimension(d: int) -> int:
    return comb(d + 2, 2)
