"""Splitting, the space W and distributivity for quadratic ideals.

Subspaces of ``V^{(x)k}`` (``V`` spanned by ``x1, x2, x3``) are carried by
spanning rows: sparse dicts from words of length ``k`` to scalars.  The
``i``-th padded component of a degree-2 space ``I`` is
``I^k_i = V^{i-1} (x) I (x) V^{k-i-1}``; their sum is the ideal component
``I^k``.  Ranks are taken over Q(h) ("generic") and after setting h = 0.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .exact.linalg import echelon, sparse_kernel, specialize_zero
from .exact.ratfunc import H, RatFunc
from .quantize import (
    MAX_DEGREE,
    DegreeTooLarge,
    Relation,
    ideal_rows,
    nc_add,
    nc_mul,
    nc_scale,
    word_key,
)

__all__ = [
    "TensorSubspace",
    "component",
    "padded",
    "splitting_check",
    "intersection_W",
    "WReport",
    "distributivity",
    "dual_subspace",
    "commutator_space",
    "symmetric_space",
    "witness_identity",
]


class TensorSubspace:
    """Row space of ``rows`` inside the degree-``k`` tensor power."""

    __slots__ = ("k", "rows")

    def __init__(self, k: int, rows):
        self.k = k
        self.rows = [dict(r) for r in rows if r]

    @classmethod
    def whole(cls, k: int) -> "TensorSubspace":
        return cls(k, [{w: Fraction(1)} for w in product(range(3), repeat=k)])

    @classmethod
    def zero(cls, k: int) -> "TensorSubspace":
        return cls(k, [])

    def columns(self):
        return list(product(range(3), repeat=self.k))

    def at_zero(self) -> "TensorSubspace":
        rows = []
        for r in self.rows:
            rows.append({w: v for w, v in ((w, specialize_zero(c)) for w, c in r.items()) if v})
        return TensorSubspace(self.k, rows)

    def basis(self) -> list[dict]:
        return list(echelon(self.rows, word_key).values())

    def dim(self) -> int:
        return len(echelon(self.rows, word_key))

    rank = dim

    def rank_profile(self) -> tuple[int, int]:
        """(generic rank, rank at h = 0)."""
        return self.dim(), self.at_zero().dim()

    def __add__(self, other: "TensorSubspace") -> "TensorSubspace":
        self._check(other)
        return TensorSubspace(self.k, self.rows + other.rows)

    def orthogonal(self) -> "TensorSubspace":
        """Annihilator under the coordinate pairing."""
        return TensorSubspace(self.k, sparse_kernel(self.rows, self.columns(), word_key))

    def __and__(self, other: "TensorSubspace") -> "TensorSubspace":
        self._check(other)
        return (self.orthogonal() + other.orthogonal()).orthogonal()

    def contains(self, other: "TensorSubspace") -> bool:
        return (self + other).dim() == self.dim()

    def same_as(self, other: "TensorSubspace") -> bool:
        d = self.dim()
        return d == other.dim() and (self + other).dim() == d

    def _check(self, other):
        if self.k != other.k:
            raise ValueError(f"degree mismatch: {self.k} vs {other.k}")

    def __repr__(self):
        return f"TensorSubspace(k={self.k}, rows={len(self.rows)})"


def _rel_terms(r):
    return r.terms if isinstance(r, Relation) else dict(r)


def _check_degree(k: int, low: int = 2, high: int = MAX_DEGREE):
    if k < low:
        raise ValueError(f"degree must be at least {low}")
    if k > high:
        raise DegreeTooLarge(f"degree {k} exceeds the supported bound {high}")


def component(rels, k: int) -> TensorSubspace:
    """``I^k`` spanned by all paddings ``m (x) f (x) m'``."""
    _check_degree(k)
    return TensorSubspace(k, ideal_rows(rels, k))


def padded(rels, k: int, i: int) -> TensorSubspace:
    """``I^k_i`` with 1-based ``i`` in ``1..k-1``."""
    _check_degree(k)
    if not 1 <= i <= k - 1:
        raise ValueError(f"position {i} out of range for degree {k}")
    return TensorSubspace(k, ideal_rows(rels, k, positions=[i - 1]))


def splitting_check(rels, k: int) -> tuple[int, int, bool]:
    """(rank at h = 0, generic rank, whether they agree) for ``I^k``."""
    g, z = component(rels, k).rank_profile()
    return z, g, z == g


# ---------------------------------------------------------------------------
# W = (I (x) V) & (V (x) I)
# ---------------------------------------------------------------------------

_X = [{(i,): RatFunc(1)} for i in range(3)]


def _left(f, x):
    return nc_mul(f, x)


def _right(f, x):
    return nc_mul(x, f)


def witness_identity(rels, case: str) -> tuple[dict, dict] | None:
    """Both sides of the explicit cyclic element of ``W`` for cases a, b, cb.

    The left side is visibly in ``I (x) V`` and the right side in
    ``V (x) I``; they must coincide.  The correction parameter is
    ``t = -h/2`` in the normalization of :func:`~quadpoisson.quantize.relations`.
    Returns None for cases without such a formula.
    """
    if case not in ("a", "b", "cb"):
        return None
    f12, f23, f31 = (_rel_terms(r) for r in rels)
    x1, x2, x3 = _X
    left = {}
    right = {}
    for f, x in ((f12, x3), (f23, x1), (f31, x2)):
        left = nc_add(left, _left(f, x))
        right = nc_add(right, _right(f, x))
    t = -H / 2
    if case == "b":
        left = nc_add(left, nc_scale(_left(f12, x1), -t))
        right = nc_add(right, nc_scale(_right(f12, x1), t))
    elif case == "cb":
        left = nc_add(left, nc_scale(nc_add(_left(f12, x2), _left(f31, x1)), -t))
        right = nc_add(right, nc_scale(nc_add(_right(f12, x2), _right(f31, x1)), t))
        # the x1-correction is second order: 2 c1 t^2 on both sides, where
        # y12 = -2 c1 x1^2 puts 2 c1 h on the word x1x1 of f12
        c1 = f12.get((0, 0), 0) / (2 * H)
        if c1:
            s = 2 * c1 * t * t
            left = nc_add(left, nc_scale(_left(f12, x1), s))
            right = nc_add(right, nc_scale(_right(f12, x1), s))
    return left, right


def _alternating():
    out = {}
    for p in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        out[p] = Fraction(1)
        out[(p[1], p[0], p[2])] = Fraction(-1)
    return out


def _leading_h(vec: dict) -> dict:
    """Divide by the largest power of h dividing every entry, then set h = 0."""
    vals = {}
    for w, c in vec.items():
        if isinstance(c, RatFunc):
            val = lambda p: next(i for i, a in enumerate(p.coeffs()) if a != 0)  # noqa: E731
            vals[w] = val(c.num) - val(c.den)
        else:
            vals[w] = 0
    m = min(vals.values())
    out = {}
    for w, c in vec.items():
        v = c * H ** (-m) if m else c
        z = specialize_zero(v) if isinstance(v, RatFunc) else v
        if z:
            out[w] = z
    return out


class WReport:
    """Dimensions of ``W`` and the outcome of the witness check."""

    def __init__(self, dim_generic: int, dim_zero: int, witness_ok: bool, method: str, witness: dict | None):
        self.dim_generic = dim_generic
        self.dim_zero = dim_zero
        self.witness_ok = witness_ok
        self.method = method
        self.witness = witness

    def as_tuple(self) -> tuple[int, int, bool]:
        return self.dim_generic, self.dim_zero, self.witness_ok

    def __iter__(self):
        return iter(self.as_tuple())

    def to_report(self):
        return {"dim_generic": self.dim_generic, "dim_zero": self.dim_zero,
                "witness_ok": self.witness_ok, "method": self.method}


def intersection_W(rels, case: str | None = None) -> WReport:
    """``W = (I (x) V) & (V (x) I)`` at the generic point and at h = 0.

    With ``case`` in {a, b, cb} (relations of the canonical bracket) the
    explicit cyclic witness is checked.  Otherwise the witness is the
    computed generic basis vector: it must exist, lie in both summands and
    reduce (after removing its h-content) to the classical alternating
    element.
    """
    left_space = TensorSubspace(3, ideal_rows(rels, 3, positions=[0]))
    right_space = TensorSubspace(3, ideal_rows(rels, 3, positions=[1]))
    both = left_space + right_space
    g = left_space.dim() + right_space.dim() - both.dim()
    lz, rz = left_space.at_zero(), right_space.at_zero()
    z = lz.dim() + rz.dim() - (lz + rz).dim()
    ident = witness_identity(rels, case) if case else None
    if ident is not None:
        lhs, rhs = ident
        ok = bool(lhs) and not nc_add(lhs, rhs, -1)
        return WReport(g, z, ok, f"cyclic identity ({case})", lhs if ok else None)
    if g == 0:
        return WReport(g, z, False, "generic basis", None)
    W = left_space & right_space
    vec = W.basis()[0]
    one = TensorSubspace(3, [vec])
    inside = left_space.contains(one) and right_space.contains(one)
    lead = _leading_h(vec)
    alt = TensorSubspace(3, [_alternating()])
    ok = inside and bool(lead) and TensorSubspace(3, [lead]).same_as(alt)
    return WReport(g, z, ok, "generic basis", vec if ok else None)


# ---------------------------------------------------------------------------
# distributivity and duality
# ---------------------------------------------------------------------------

def _sum(spaces, k):
    out = TensorSubspace.zero(k)
    for s in spaces:
        out = out + s
    return out


def _meet(spaces, k):
    out = TensorSubspace.whole(k)
    for s in spaces:
        out = out & s
    return out


def distributivity(space, k: int, which: str = "eq1", at: str = "zero") -> bool:
    """Lattice condition (1) or (3) for the padded components of a degree-2 space.

    eq1: ``I1 & (I2 + ... + I_{k-1}) = I1 & I2 + I1 & (I3 + ... + I_{k-1})``
    eq3: ``I1 + (I2 & ... & I_{k-1}) = (I1 + I2) & (I1 + (I3 & ... & I_{k-1}))``
    (an empty sum is 0, an empty intersection is the whole space).
    """
    _check_degree(k, 3, 6)
    if not isinstance(space, TensorSubspace):
        space = TensorSubspace(2, [_rel_terms(r) for r in space])
    if space.k != 2:
        raise ValueError("distributivity needs a degree-2 subspace")
    if at == "zero":
        space = space.at_zero()
    elif at != "generic":
        raise ValueError(f"unknown point {at!r}")
    parts = [TensorSubspace(k, ideal_rows(space.rows, k, positions=[i])) for i in range(k - 1)]
    I1, I2, rest = parts[0], parts[1], parts[2:]
    if which == "eq1":
        lhs = I1 & _sum(parts[1:], k)
        rhs = (I1 & I2) + (I1 & _sum(rest, k))
    elif which == "eq3":
        lhs = I1 + _meet(parts[1:], k)
        rhs = (I1 + I2) & (I1 + _meet(rest, k))
    else:
        raise ValueError(f"unknown condition {which!r}")
    return lhs.same_as(rhs)


def dual_subspace(space) -> TensorSubspace:
    """``I* = {l in V* (x) V* : l(I) = 0}`` for a degree-2 space."""
    if not isinstance(space, TensorSubspace):
        space = TensorSubspace(2, [_rel_terms(r) for r in space])
    if space.k != 2:
        raise ValueError("dual_subspace expects a degree-2 subspace")
    return space.orthogonal()


def commutator_space() -> TensorSubspace:
    return TensorSubspace(2, [{(i, j): Fraction(1), (j, i): Fraction(-1)} for i, j in ((0, 1), (1, 2), (2, 0))])


def symmetric_space() -> TensorSubspace:
    rows = [{(i, i): Fraction(1)} for i in range(3)]
    rows += [{(i, j): Fraction(1), (j, i): Fraction(1)} for i, j in ((0, 1), (1, 2), (2, 0))]
    return TensorSubspace(2, rows)
