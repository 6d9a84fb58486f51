"""Exact linear algebra over Q and Q(h).

Matrices are small dense objects (:class:`Matrix`); the heavy lifting for
tensor-power ranks happens in :func:`echelon`, which works on sparse rows
(``dict`` column -> scalar) so the 729-column spanning families stay cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from flint import fmpq, fmpq_poly

from .ratfunc import PoleAtZero, RatFunc, to_fraction

__all__ = [
    "Matrix",
    "IrrationalSpectrum",
    "SingularMatrix",
    "echelon",
    "sparse_rank",
    "sparse_kernel",
    "specialize_zero",
    "rank_profile",
    "kernel",
    "jordan_3x3",
    "conjugator",
]


class IrrationalSpectrum(ArithmeticError):
    """The characteristic polynomial does not split over Q."""

    def __init__(self, charpoly: list[Fraction]):
        self.charpoly = charpoly
        super().__init__(f"characteristic polynomial {_fmt_charpoly(charpoly)} does not split over Q")


class SingularMatrix(ArithmeticError):
    pass


def _fmt_charpoly(coeffs):
    from .ratfunc import _format_rational

    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        mag = abs(c)
        body = mono if (mono and mag == 1) else (f"{_format_rational(mag)}*{mono}" if mono else _format_rational(mag))
        terms.append((c > 0, body))
    out = ""
    for i, (pos, body) in enumerate(terms):
        out += (body if pos else f"-{body}") if i == 0 else (f" + {body}" if pos else f" - {body}")
    return out or "0"


def specialize_zero(x):
    """Value of a scalar at h = 0 (identity on rationals)."""
    if isinstance(x, RatFunc):
        return x.at_zero()
    return x


# ---------------------------------------------------------------------------
# sparse elimination
# ---------------------------------------------------------------------------

def echelon(rows: Iterable[dict], key: Callable[[Hashable], object] | None = None) -> dict:
    """Row-reduce sparse rows; returns ``{pivot column: normalized row}``.

    The pivot of each row is its largest column under ``key``; every stored
    row has entry 1 at its pivot and only smaller columns besides.
    """
    key = key or (lambda c: c)
    pivots: dict = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            col = max(r, key=key)
            piv = pivots.get(col)
            if piv is None:
                inv = 1 / Fraction(r[col]) if isinstance(r[col], int) else 1 / r[col]
                pivots[col] = {c: v * inv for c, v in r.items()}
                break
            f = r.pop(col)
            for c, v in piv.items():
                if c == col:
                    continue
                old = r.get(c)
                nv = -(f * v) if old is None else old - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return pivots


def sparse_rank(rows: Iterable[dict], key=None) -> int:
    return len(echelon(rows, key))


def sparse_kernel(rows: Iterable[dict], columns: Sequence[Hashable], key=None) -> list[dict]:
    """Basis of ``{v : row . v = 0 for every row}`` as sparse vectors."""
    key = key or (lambda c: c)
    pivots = echelon(rows, key)
    free = [c for c in columns if c not in pivots]
    order = sorted(pivots, key=key)
    basis = []
    for f in free:
        v: dict = {f: Fraction(1)}
        for pc in order:
            row = pivots[pc]
            s = 0
            for c, a in row.items():
                if c != pc and c in v:
                    s = s + a * v[c]
            if s:
                v[pc] = -s
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Dense exact matrix; entries are ``Fraction`` or :class:`RatFunc`."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int | None = None) -> "Matrix":
        return cls([[0] * (m if n is None else n) for _ in range(m)])

    @classmethod
    def diag(cls, *entries) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def map(self, f) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.rows])

    def at_zero(self) -> "Matrix":
        return self.map(specialize_zero)

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.rows)]) if self.rows else Matrix([])

    T = property(transpose)

    def __add__(self, other: "Matrix"):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix"):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} x {other.shape}")
            cols = list(zip(*other.rows))
            return Matrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows])
        return self.map(lambda x: x * other)

    def __rmul__(self, c):
        return self.map(lambda x: c * x)

    def apply(self, vec: Sequence):
        return [sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.rows]

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Matrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"

    def _sparse_rows(self):
        return [{j: x for j, x in enumerate(r) if x} for r in self.rows]

    def rank(self) -> int:
        return sparse_rank(self._sparse_rows())

    def kernel(self) -> list[list]:
        basis = sparse_kernel(self._sparse_rows(), range(self.ncols))
        return [[v.get(j, Fraction(0)) for j in range(self.ncols)] for v in basis]

    def det(self):
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det = det * a[c][c]
            inv = 1 / a[c][c]
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                raise SingularMatrix("matrix is singular")
            a[c], a[p] = a[p], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return Matrix([r[n:] for r in a])


def rank_profile(M: Matrix) -> tuple[int, int]:
    """Ranks of ``M`` over Q(h) and after specializing h = 0."""
    try:
        Z = M.at_zero()
    except PoleAtZero:
        raise
    return M.rank(), Z.rank()


def kernel(M: Matrix, at: str = "generic") -> list[list]:
    if at == "generic":
        return M.kernel()
    if at == "zero":
        return M.at_zero().kernel()
    raise ValueError(f"unknown specialization point {at!r}")


# ---------------------------------------------------------------------------
# 3x3 spectra
# ---------------------------------------------------------------------------

def charpoly_3x3(M: Matrix) -> list[Fraction]:
    """Ascending coefficients of det(t I - M)."""
    tr = M.trace()
    e2 = sum((M[i, i] * M[j, j] - M[i, j] * M[j, i] for i in range(3) for j in range(i + 1, 3)), Fraction(0))
    return [-M.det(), e2, -tr, Fraction(1)]


def rational_eigenvalues(M: Matrix) -> list[tuple[Fraction, int]]:
    """Eigenvalues with algebraic multiplicity, ascending; raises if irrational."""
    cp = charpoly_3x3(M)
    poly = fmpq_poly([fmpq(c.numerator, c.denominator) for c in cp])
    _, factors = poly.factor()
    out = []
    for f, mult in factors:
        if f.degree() != 1:
            raise IrrationalSpectrum(cp)
        c = f.coeffs()
        out.append((to_fraction(-c[0] / c[1]), int(mult)))
    return sorted(out)


def _jordan_blocks(M: Matrix, lam, mult: int) -> list[int]:
    n = M.nrows
    N = M - Matrix.identity(n) * lam
    geo = n - N.rank()
    if mult == 1:
        return [1]
    if mult == 2:
        return [1, 1] if geo == 2 else [2]
    return {3: [1, 1, 1], 2: [2, 1], 1: [3]}[geo]


def jordan_form(M: Matrix) -> Matrix:
    """Upper Jordan form: eigenvalues ascending, blocks by descending size."""
    n = M.nrows
    J = [[Fraction(0)] * n for _ in range(n)]
    pos = 0
    for lam, mult in rational_eigenvalues(M):
        for size in _jordan_blocks(M, lam, mult):
            for k in range(size):
                J[pos + k][pos + k] = lam
                if k + 1 < size:
                    J[pos + k][pos + k + 1] = Fraction(1)
            pos += size
    return Matrix(J)


def conjugator(M: Matrix, C: Matrix) -> Matrix | None:
    """An invertible ``A`` with ``A M A^-1 = C``, or None when not similar.

    Solves the linear system ``A M = C A`` and picks the first invertible
    member of a fixed sequence of combinations of the solution basis.
    """
    n = M.nrows
    idx = lambda i, j: i * n + j  # noqa: E731
    rows = []
    for i in range(n):
        for k in range(n):
            r: dict = {}
            for j in range(n):
                if M[j, k]:
                    r[idx(i, j)] = r.get(idx(i, j), 0) + M[j, k]
                if C[i, j]:
                    r[idx(j, k)] = r.get(idx(j, k), 0) - C[i, j]
            rows.append({c: v for c, v in r.items() if v})
    basis = sparse_kernel(rows, range(n * n))
    if not basis:
        return None
    vecs = [[v.get(c, Fraction(0)) for c in range(n * n)] for v in basis]

    def build(coeffs):
        flat = [sum((a * vec[c] for a, vec in zip(coeffs, vecs)), Fraction(0)) for c in range(n * n)]
        return Matrix([flat[i * n:(i + 1) * n] for i in range(n)])

    if M == C:
        return Matrix.identity(n)
    candidates = [[1] * len(vecs)]
    candidates += [[int(i == j) for j in range(len(vecs))] for i in range(len(vecs))]
    rnd = random.Random(0)  # fixed seed keeps the choice reproducible
    candidates += [[rnd.randint(-3, 3) for _ in vecs] for _ in range(200)]
    for coeffs in candidates:
        A = build(coeffs)
        if A.det():
            return A
    return None


def jordan_3x3(M: Matrix) -> tuple[Matrix, Matrix]:
    """Jordan form ``J`` and an exact ``A`` with ``A M A^-1 = J``."""
    if M.shape != (3, 3):
        raise ValueError("jordan_3x3 expects a 3x3 matrix")
    J = jordan_form(M)
    A = conjugator(M, J)
    assert A is not None
    return J, A
