"""Quadratic brackets on k[x1, x2, x3].

A bracket is stored through its structure constants ``c[i][j][k][l]``
(0-based) with ``b(x_i, x_j) = sum_kl c[i][j][k][l] x_k x_l``.  For the
ordinary (even) polynomial algebra the constants are antisymmetric in
``(i, j)`` and kept symmetric in ``(k, l)``.  :func:`dualize` exchanges the
index pairs, which lands on the Grassmann side; those brackets carry
``parity == "odd"`` (symmetric in ``(i, j)``, antisymmetric in ``(k, l)``).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .exact.linalg import Matrix, SingularMatrix
from .exact.poly import DEFAULT_VARS, Poly

__all__ = [
    "QuadraticBracket",
    "PData",
    "AntisymmetryError",
    "NotCubic",
    "MissingParameter",
    "CASES",
    "from_structure_constants",
    "from_case",
    "v_vector",
    "p_matrix",
    "p_data",
    "jacobi_residual",
    "is_poisson",
    "transform",
    "extend",
    "dualize",
]

CASES = ("a", "b", "ca", "cb", "da", "db", "dc")
PAIRS = ((0, 1), (1, 2), (2, 0))
R3 = range(3)


class AntisymmetryError(ValueError):
    pass


class NotCubic(ValueError):
    pass


class MissingParameter(ValueError):
    pass


def _zero_tensor():
    return [[[[Fraction(0)] * 3 for _ in R3] for _ in R3] for _ in R3]


def _freeze(c):
    return tuple(tuple(tuple(tuple(c[i][j][k]) for k in R3) for j in R3) for i in R3)


class QuadraticBracket:
    __slots__ = ("c", "parity", "_y")

    def __init__(self, c, parity: str = "even"):
        self.c = _freeze(c)
        self.parity = parity
        self._y = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "QuadraticBracket":
        return cls(_zero_tensor())

    @classmethod
    def from_polys(cls, y12: Poly, y23: Poly, y31: Poly) -> "QuadraticBracket":
        c = _zero_tensor()
        for (i, j), y in zip(PAIRS, (y12, y23, y31)):
            if y and not y.is_homogeneous(2):
                raise ValueError(f"y{i + 1}{j + 1} is not a quadratic form: {y}")
            for mono, coef in y.terms.items():
                ks = [k for k in R3 for _ in range(mono[k])]
                k, l = ks
                val = Fraction(coef) if k == l else Fraction(coef) / 2
                for a, b in {(k, l), (l, k)}:
                    c[i][j][a][b] = val
                    c[j][i][a][b] = -val
        return cls(c)

    # -- data -------------------------------------------------------------
    def y(self, i: int, j: int) -> Poly:
        """``b(x_{i+1}, x_{j+1})`` as a polynomial (even brackets only)."""
        if self.parity != "even":
            raise TypeError("structure polynomials are only defined for even brackets")
        if self._y is None:
            ys = {}
            for a, b in product(R3, R3):
                terms: dict = {}
                for k, l in product(R3, R3):
                    v = self.c[a][b][k][l]
                    if v:
                        e = [0, 0, 0]
                        e[k] += 1
                        e[l] += 1
                        terms[tuple(e)] = terms.get(tuple(e), 0) + v
                ys[a, b] = Poly(terms)
            self._y = ys
        return self._y[i, j]

    def polys(self) -> tuple[Poly, Poly, Poly]:
        return tuple(self.y(i, j) for i, j in PAIRS)

    def is_zero(self) -> bool:
        return not any(v for i in self.c for j in i for k in j for v in k)

    def __eq__(self, other):
        return isinstance(other, QuadraticBracket) and self.c == other.c and self.parity == other.parity

    def __hash__(self):
        return hash((self.c, self.parity))

    def __repr__(self):
        if self.parity == "even":
            y12, y23, y31 = self.polys()
            return f"QuadraticBracket(y12={y12}, y23={y23}, y31={y31})"
        return f"QuadraticBracket(parity='odd', c={self.c})"


def from_structure_constants(c) -> QuadraticBracket:
    """Validate raw constants (nested 3x3x3x3 or ``{(i,j,k,l): v}``, 0-based).

    The ``(k, l)`` pair is symmetrized first; the result must then be
    antisymmetric in ``(i, j)``.
    """
    raw = _zero_tensor()
    if isinstance(c, Mapping):
        for (i, j, k, l), v in c.items():
            raw[i][j][k][l] = Fraction(v)
    else:
        for i, j, k, l in product(R3, R3, R3, R3):
            raw[i][j][k][l] = Fraction(c[i][j][k][l])
    sym = _zero_tensor()
    for i, j, k, l in product(R3, R3, R3, R3):
        sym[i][j][k][l] = (raw[i][j][k][l] + raw[i][j][l][k]) / 2
    for i, j, k, l in product(R3, R3, R3, R3):
        if sym[i][j][k][l] != -sym[j][i][k][l]:
            raise AntisymmetryError(
                f"c[{i + 1}{j + 1}][{k + 1}{l + 1}] = {sym[i][j][k][l]} but "
                f"c[{j + 1}{i + 1}][{k + 1}{l + 1}] = {sym[j][i][k][l]}"
            )
    return QuadraticBracket(sym)


# ---------------------------------------------------------------------------
# canonical families
# ---------------------------------------------------------------------------

def _need(params, *names):
    missing = [n for n in names if n not in params]
    if missing:
        raise MissingParameter(f"missing parameter(s): {', '.join(missing)}")
    return [Fraction(params[n]) for n in names]


def from_case(case_id: str, f: Poly | None = None, **params) -> QuadraticBracket:
    """Bracket of a classification case built from a cubic form ``f``.

    ``y12 = df/dx3``, ``y23 = df/dx1``, ``y31 = df/dx2`` plus the case's
    correction terms.  Parameters: ``lam`` for ca, db, dc; ``lam1``,
    ``lam2`` for da.
    """
    if case_id not in CASES:
        raise ValueError(f"unknown case {case_id!r}")
    f = f if f is not None else Poly()
    if f and not f.is_homogeneous(3):
        raise NotCubic(f"f must be a homogeneous cubic form, got {f}")
    x1, x2, x3 = Poly.gens()
    y12, y23, y31 = f.diff(2), f.diff(0), f.diff(1)
    if case_id == "b":
        y23 = y23 - x1 * x2
    elif case_id == "ca":
        (lam,) = _need(params, "lam")
        y23 = y23 - lam * x2 * x3
    elif case_id == "cb":
        y23 = y23 + x1 * x3 - Fraction(1, 2) * x2 * x2
    elif case_id == "da":
        lam1, lam2 = _need(params, "lam1", "lam2")
        y23 = y23 + lam2 * x2 * x3
        y31 = y31 - lam1 * x1 * x3
    elif case_id == "db":
        (lam,) = _need(params, "lam")
        y23 = y23 + lam * x2 * x3
        y31 = y31 - lam * x1 * x3
    elif case_id == "dc":
        (lam,) = _need(params, "lam")
        y12 = y12 - lam / 2 * x1 * x1
        y23 = y23 + lam * x2 * x3
        y31 = y31 - lam * x1 * x3
    return QuadraticBracket.from_polys(y12, y23, y31)


# ---------------------------------------------------------------------------
# calculus
# ---------------------------------------------------------------------------

class PData:
    """The divergence vector ``v`` and its coefficient matrix ``P``."""

    __slots__ = ("v", "P")

    def __init__(self, v: tuple[Poly, Poly, Poly], P: Matrix):
        self.v = v
        self.P = P

    @property
    def rank(self) -> int:
        return self.P.rank()

    def __repr__(self):
        return f"PData(v={self.v}, P={self.P})"


def v_vector(b: QuadraticBracket) -> tuple[Poly, Poly, Poly]:
    """``v_i = sum_k d y_ik / d x_k``."""
    return tuple(sum((b.y(i, k).diff(k) for k in R3), Poly()) for i in R3)


def p_matrix(b: QuadraticBracket) -> Matrix:
    v = v_vector(b)
    return Matrix([[v[i].coeff(tuple(int(m == j) for m in R3)) for j in R3] for i in R3])


def p_data(b: QuadraticBracket) -> PData:
    v = v_vector(b)
    P = p_matrix(b)
    assert P.trace() == 0, "trace of P must vanish"
    return PData(v, P)


def extend(b: QuadraticBracket, f: Poly, g: Poly) -> Poly:
    """Biderivation extension ``b(f, g) = sum_ij df/dx_i dg/dx_j y_ij``."""
    out = Poly(vars=f.vars)
    df = [f.diff(i) for i in R3]
    dg = [g.diff(j) for j in R3]
    for i, j in product(R3, R3):
        if i != j and df[i] and dg[j]:
            out = out + df[i] * dg[j] * b.y(i, j)
    return out


def jacobi_residual(b: QuadraticBracket) -> tuple[Poly, Poly]:
    """(``y12 v3 + y23 v1 + y31 v2``, cyclic sum of ``b(b(x_i, x_j), x_k)``)."""
    v1, v2, v3 = v_vector(b)
    y12, y23, y31 = b.polys()
    linear = y12 * v3 + y23 * v1 + y31 * v2
    x1, x2, x3 = Poly.gens()
    triple = extend(b, y12, x3) + extend(b, y23, x1) + extend(b, y31, x2)
    return linear, triple


def is_poisson(b: QuadraticBracket) -> bool:
    linear, triple = jacobi_residual(b)
    return not triple


def transform(b: QuadraticBracket, A: Matrix | Sequence[Sequence]) -> QuadraticBracket:
    """Express ``b`` in the coordinates ``X_i = sum_j A[i][j] x_j``."""
    A = A if isinstance(A, Matrix) else Matrix(A)
    try:
        Ainv = A.inverse()
    except SingularMatrix:
        raise SingularMatrix("transformation matrix is singular") from None
    X = Poly.gens()
    back = {DEFAULT_VARS[m]: sum((Ainv[m, n] * X[n] for n in R3), Poly()) for m in R3}
    ys = []
    for i, j in PAIRS:
        acc = Poly()
        for k, l in product(R3, R3):
            coef = A[i, k] * A[j, l]
            if coef and k != l:
                acc = acc + b.y(k, l).scale(coef)
        ys.append(acc.substitute(back))
    return QuadraticBracket.from_polys(*ys)


def dualize(b: QuadraticBracket) -> QuadraticBracket:
    """Exchange lower and upper index pairs: ``c~[i][j][k][l] = c[k][l][i][j]``."""
    c = _zero_tensor()
    for i, j, k, l in product(R3, R3, R3, R3):
        c[i][j][k][l] = b.c[k][l][i][j]
    return QuadraticBracket(c, parity="odd" if b.parity == "even" else "even")
