"""Classification of quadratic Poisson brackets and of ternary cubic forms.

A Poisson bracket is sorted by the rank and Jordan type of its matrix
``P``: ``a`` (rank 0), ``b`` (rank 1), ``ca``/``cb`` (rank 2, semisimple or
nilpotent) and ``da``/``db``/``dc`` (rank 3: distinct eigenvalues, a
diagonalizable double eigenvalue, a Jordan block).  When the spectrum is
rational the bracket is moved to canonical coordinates and the cubic form
``f`` is read off.

Cubic forms are matched against the ten-orbit list

    1) 0   2) x^3   3) x^2 y   4) x y (x + y)   5) z x^2 + x y^2
    6) z x^2 + y^3   7) 2 z x y   8) 2 z x y + x^3   9) 2 z x y + x^3 + y^3
    10) z^2 x + y (x + y)(x + c y),  c not 0 or 1

with ``x, y, z = x1, x2, x3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

import sympy
from flint import fmpq, fmpq_poly

from .bracket import QuadraticBracket, from_case, jacobi_residual, p_matrix, transform
from .exact.linalg import Matrix, charpoly_3x3, conjugator, rational_eigenvalues, sparse_rank
from .exact.poly import DEFAULT_VARS, Poly

__all__ = [
    "NotPoisson",
    "Inconsistent",
    "OutsideFamily",
    "ClassificationReport",
    "CubicOrbitReport",
    "classify",
    "canonical_p",
    "recover_cubic",
    "family_cubic",
    "family_constraint",
    "orbit_representative",
    "orbit_fingerprint",
    "orbit_verify",
    "compose",
]


class NotPoisson(ValueError):
    """The Jacobi identity fails."""


class Inconsistent(ValueError):
    """No cubic form reproduces the bracket in the given case."""


class OutsideFamily(ValueError):
    """A cubic form exists but violates the case's Jacobi constraint."""


X1, X2, X3 = Poly.gens()


# ---------------------------------------------------------------------------
# canonical data per case
# ---------------------------------------------------------------------------

def canonical_p(case_id: str, **params) -> Matrix:
    """The matrix P of ``from_case(case_id, f, **params)`` (independent of f)."""
    F = Fraction
    z = F(0)
    if case_id == "a":
        return Matrix.zeros(3)
    if case_id == "b":
        return Matrix([[z, z, z], [z, z, z], [F(1), z, z]])
    if case_id == "ca":
        lam = F(params["lam"])
        return Matrix.diag(z, -lam, lam)
    if case_id == "cb":
        return Matrix([[z, z, z], [F(1), z, z], [z, F(1), z]])
    if case_id == "da":
        l1, l2 = F(params["lam1"]), F(params["lam2"])
        return Matrix.diag(l1, l2, -l1 - l2)
    if case_id == "db":
        lam = F(params["lam"])
        return Matrix.diag(lam, lam, -2 * lam)
    if case_id == "dc":
        lam = F(params["lam"])
        return Matrix([[lam, z, z], [lam, lam, z], [z, z, -2 * lam]])
    raise ValueError(f"unknown case {case_id!r}")


def family_constraint(case_id: str, f: Poly, **params) -> Poly:
    """The polynomial that must vanish for ``from_case(case_id, f)`` to be Poisson."""
    f1, f2, f3 = f.diff(0), f.diff(1), f.diff(2)
    if case_id == "a":
        return Poly()
    if case_id == "b":
        return f3
    if case_id == "ca":
        return X3 * f3 - X2 * f2
    if case_id == "cb":
        return X2 * f3 + X1 * f2
    if case_id == "da":
        l1, l2 = Fraction(params["lam1"]), Fraction(params["lam2"])
        return (X1 * f1).scale(l1) + (X2 * f2).scale(l2) - (X3 * f3).scale(l1 + l2)
    if case_id == "db":
        return X1 * f1 + X2 * f2 - (X3 * f3).scale(2)
    if case_id == "dc":
        return X1 * f1 + (X1 + X2) * f2 - (X3 * f3).scale(2)
    raise ValueError(f"unknown case {case_id!r}")


def family_cubic(case_id: str, **params) -> Poly:
    """The general admissible cubic of a case from its named constants.

    ``a``: ``f`` given directly; ``b``: ``f`` (a form in x1, x2); ``ca``:
    ``c1, c2``; ``cb``: ``c1, c2``; ``da``: ``c``; ``db``: ``g`` (binary
    quadratic form in x1, x2); ``dc``: ``c``.
    """
    F = lambda name: Fraction(params.get(name, 0))  # noqa: E731
    if case_id in ("a", "b"):
        return params.get("f", Poly())
    if case_id == "ca":
        return (X1 * X2 * X3).scale(2 * F("c1")) + (X1 ** 3).scale(F("c2"))
    if case_id == "cb":
        c1 = F("c1")
        return (X3 * X1 * X1).scale(-2 * c1) + (X1 * X2 * X2).scale(c1) + (X1 ** 3).scale(F("c2"))
    if case_id == "da":
        return (X1 * X2 * X3).scale(2 * F("c"))
    if case_id == "db":
        return params.get("g", Poly()) * X3
    if case_id == "dc":
        return (X1 * X1 * X3).scale(F("c"))
    raise ValueError(f"unknown case {case_id!r}")


def _case_params_from_p(case_id: str, P: Matrix) -> dict:
    if case_id == "ca":
        return {"lam": P[2, 2]}
    if case_id == "da":
        return {"lam1": P[0, 0], "lam2": P[1, 1]}
    if case_id in ("db", "dc"):
        return {"lam": P[0, 0]}
    return {}


# ---------------------------------------------------------------------------
# cubic recovery
# ---------------------------------------------------------------------------

def _integrate_gradient(g1: Poly, g2: Poly, g3: Poly) -> Poly:
    """The cubic ``f`` with gradient ``(g1, g2, g3)``; raises Inconsistent."""
    grads = (g1, g2, g3)
    for g in grads:
        if g and not g.is_homogeneous(2):
            raise Inconsistent("gradient components must be quadratic forms")
    terms = {}
    for mono in _monomials(3):
        i = next(k for k in range(3) if mono[k])
        e = list(mono)
        e[i] -= 1
        c = grads[i].coeff(tuple(e))
        if c:
            terms[mono] = Fraction(c) / mono[i]
    f = Poly(terms)
    for i in range(3):
        if f.diff(i) != grads[i]:
            raise Inconsistent(
                f"no cubic form has the required partial derivatives (mismatch in d/dx{i + 1})"
            )
    return f


def _monomials(d: int, n: int = 3) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return out


def recover_cubic(b: QuadraticBracket, case_id: str, **params) -> Poly:
    """Cubic form of a bracket given in the canonical coordinates of ``case_id``.

    Missing eigenvalue parameters are read off the diagonal of ``P``.
    """
    if not params:
        params = _case_params_from_p(case_id, p_matrix(b))
    base = from_case(case_id, None, **params)
    y12, y23, y31 = (b.y(i, j) - base.y(i, j) for i, j in ((0, 1), (1, 2), (2, 0)))
    f = _integrate_gradient(y23, y31, y12)
    residue = family_constraint(case_id, f, **params)
    if residue:
        raise OutsideFamily(f"cubic {f} violates the {case_id} constraint: {residue} != 0")
    return f


def _case_constants(case_id: str, f: Poly) -> dict:
    c = f.coeff
    if case_id == "ca":
        return {"c1": c((1, 1, 1)) / 2, "c2": c((3, 0, 0))}
    if case_id == "cb":
        return {"c1": c((1, 2, 0)), "c2": c((3, 0, 0))}
    if case_id == "da":
        return {"c": c((1, 1, 1)) / 2}
    if case_id == "dc":
        return {"c": c((2, 0, 1))}
    if case_id == "db":
        g = Poly({(m[0], m[1], 0): v for m, v in f.terms.items()})
        return {"g": g}
    return {}


def _db_reduction(f: Poly) -> Matrix | None:
    """Transform in (x1, x2) removing the x2^2 x3 term of ``f = g x3``, if rational."""
    a, b, e = f.coeff((2, 0, 1)), f.coeff((1, 1, 1)), f.coeff((0, 2, 1))
    if not e:
        return None
    # want a rational root t of a t^2 + b t + e = 0; then x1 = X1 + t X2 kills X2^2
    if not a:
        if not b:
            # g = e x2^2; swap the roles of x1 and x2
            return Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        t = -e / b
    else:
        disc = b * b - 4 * a * e
        r = _rational_sqrt(disc)
        if r is None:
            return None
        t = (-b + r) / (2 * a)
    return Matrix([[1, -t, 0], [0, 1, 0], [0, 0, 1]])


def _rational_sqrt(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    n, d = sympy.integer_nthroot(q.numerator, 2), sympy.integer_nthroot(q.denominator, 2)
    if n[1] and d[1]:
        return Fraction(int(n[0]), int(d[0]))
    return None


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass
class ClassificationReport:
    case_label: str
    rank: int
    spectrum: list | None = None
    charpoly: list | None = None
    A: Matrix | None = None
    canonical: QuadraticBracket | None = None
    f: Poly | None = None
    params: dict = field(default_factory=dict)

    @property
    def rational(self) -> bool:
        return self.A is not None

    def to_report(self) -> dict:
        from .lang import format_bracket

        out = {
            "case": self.case_label,
            "rank": self.rank,
            "charpoly": _charpoly_text(self.charpoly),
            "params": self.params,
        }
        if self.spectrum is not None:
            out["spectrum"] = [[lam, m] for lam, m in self.spectrum]
        if self.A is not None:
            out["transform"] = self.A
            out["canonical"] = format_bracket(self.canonical).strip().split("\n")
            out["f"] = self.f
        return out


def _charpoly_text(cp) -> str:
    from .lang import format_poly

    if cp is None:
        return ""
    return format_poly(Poly({(k,): c for k, c in enumerate(cp)}, vars=("t",)))


def _has_repeated_root(cp: list[Fraction]) -> bool:
    p = fmpq_poly([fmpq(c.numerator, c.denominator) for c in cp])
    return p.gcd(p.derivative()).degree() > 0


def classify(b: QuadraticBracket) -> ClassificationReport:
    """Determine the case of a Poisson bracket and, when possible, its normal form."""
    linear, triple = jacobi_residual(b)
    if triple:
        raise NotPoisson(f"Jacobi identity fails: residual {triple}")
    P = p_matrix(b)
    r = P.rank()
    cp = charpoly_3x3(P)
    if r == 0:
        label = "a"
    elif r == 1:
        label = "b"
    elif r == 2:
        label = "ca" if cp[1] else "cb"
    else:
        if not _has_repeated_root(cp):
            label = "da"
        else:
            p = fmpq_poly([fmpq(c.numerator, c.denominator) for c in cp])
            g = p.gcd(p.derivative())
            lam = Fraction(int((-g[0] / g[1]).p), int((-g[0] / g[1]).q))
            label = "db" if (P - Matrix.identity(3) * lam).rank() == 1 else "dc"
    report = ClassificationReport(label, r, charpoly=cp)
    try:
        eig = rational_eigenvalues(P)
    except ArithmeticError:
        return report
    report.spectrum = eig
    params = _case_params_from_p(label, P)
    if canonical_p(label, **params) == P:
        # already canonical: keep the caller's coordinates (and its ordering)
        A = Matrix.identity(3)
    else:
        params = _target_params(label, eig)
        A = conjugator(P, canonical_p(label, **params))
    assert A is not None, "P is not similar to its canonical form"
    canon = transform(b, A)
    f = recover_cubic(canon, label, **params)
    if label == "db":
        R = _db_reduction(f)
        if R is not None:
            A = R * A
            canon = transform(b, A)
            f = recover_cubic(canon, label, **params)
    report.A = A
    report.canonical = canon
    report.f = f
    report.params = {**params, **_case_constants(label, f)}
    return report


def _target_params(label: str, eig: list[tuple[Fraction, int]]) -> dict:
    values = sorted(lam for lam, m in eig for _ in range(m))
    if label == "ca":
        return {"lam": values[-1]}
    if label == "da":
        return {"lam1": values[0], "lam2": values[1]}
    if label in ("db", "dc"):
        lam = next(lam for lam, m in eig if m == 2)
        return {"lam": lam}
    return {}


# ---------------------------------------------------------------------------
# cubic orbits
# ---------------------------------------------------------------------------

def orbit_representative(orbit_id: int, c=None) -> Poly:
    x, y, z = X1, X2, X3
    reps = {
        1: Poly(),
        2: x ** 3,
        3: x * x * y,
        4: x * y * (x + y),
        5: z * x * x + x * y * y,
        6: z * x * x + y ** 3,
        7: (z * x * y).scale(2),
        8: (z * x * y).scale(2) + x ** 3,
        9: (z * x * y).scale(2) + x ** 3 + y ** 3,
    }
    if orbit_id == 10:
        if c is None:
            raise ValueError("orbit 10 needs the parameter c")
        c = Fraction(c)
        if c in (0, 1):
            raise ValueError(f"orbit 10 requires c not in {{0, 1}} (c = {c} gives orbit {8 if c == 0 else 9})")
        return z * z * x + y * (x + y) * (x + y.scale(c))
    if orbit_id not in reps:
        raise ValueError(f"orbit id must be in 1..10, got {orbit_id}")
    return reps[orbit_id]


@dataclass
class CubicOrbitReport:
    candidates: list[int]
    essential_variables: int
    repeated_factor: bool
    tjurina: int | None
    hessian_proportional: bool
    rational_linear_factor: bool
    witness: Matrix | None = None
    c: Fraction | None = None

    @property
    def orbit_id(self) -> int | None:
        return self.candidates[0] if len(self.candidates) == 1 else None

    def to_report(self) -> dict:
        out = {
            "candidates": self.candidates,
            "essential_variables": self.essential_variables,
            "repeated_factor": self.repeated_factor,
            "tjurina": self.tjurina,
            "hessian_proportional": self.hessian_proportional,
            "rational_linear_factor": self.rational_linear_factor,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.c is not None:
            out["c"] = self.c
        return out


_SYMS = sympy.symbols(DEFAULT_VARS)


def _to_sympy(p: Poly):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*(s ** e for s, e in zip(_SYMS, m)))
                for m, c in p.terms.items()), sympy.Integer(0))


def _span_rank(polys: list[Poly]) -> int:
    return sparse_rank([dict(p.terms) for p in polys if p])


def _tjurina_total(f: Poly, d: int) -> int:
    """dim (S / J)_d, J the ideal of first partials."""
    grads = [f.diff(i) for i in range(3)]
    rows = [dict((g * Poly({m: 1})).terms) for g in grads for m in _monomials(d - 2)]
    return len(_monomials(d)) - sparse_rank([r for r in rows if r])


def _hessian(f: Poly) -> Poly:
    H = [[f.diff(i).diff(j) for j in range(3)] for i in range(3)]
    return (H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1])
            - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0])
            + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]))


def orbit_fingerprint(f: Poly) -> CubicOrbitReport:
    """Invariants of a cubic form and the orbits compatible with them."""
    if f and not f.is_homogeneous(3):
        raise ValueError(f"expected a homogeneous cubic form, got {f}")
    if not f:
        return CubicOrbitReport([1], 0, False, None, False, False)
    ess = _span_rank([f.diff(i) for i in range(3)])
    fs = _to_sympy(f)
    _, factors = sympy.factor_list(fs, *_SYMS)
    repeated = any(m > 1 for _, m in factors)
    linear = any(sympy.Poly(g, *_SYMS).total_degree() == 1 for g, _ in factors)
    hess = _hessian(f)
    prop = bool(hess) and _span_rank([hess, f]) == 1
    if ess == 1:
        return CubicOrbitReport([2], 1, True, None, False, True)
    if ess == 2:
        return CubicOrbitReport([3] if repeated else [4], 2, repeated, None, prop, linear)
    tau = _tjurina_total(f, 6)
    if tau != _tjurina_total(f, 7):  # not yet stable; should not happen for plane cubics
        cands = [5, 6, 7, 8, 9, 10]
    elif tau == 0:
        cands = [10]
    elif tau == 1:
        cands = [9]
    elif tau == 2:
        cands = [8] if linear else [6]
    elif tau == 3:
        cands = [7] if prop else [5]
    else:
        cands = [5, 6, 7, 8, 9]
    return CubicOrbitReport(cands, 3, repeated, tau, prop, linear)


def compose(f: Poly, A) -> Poly:
    """``(f o A)(x) = f(A x)``."""
    A = A if isinstance(A, Matrix) else Matrix(A)
    X = Poly.gens()
    images = {DEFAULT_VARS[i]: sum((X[j].scale(A[i, j]) for j in range(3) if A[i, j]), Poly()) for i in range(3)}
    return f.substitute(images)


def orbit_verify(f: Poly, A, orbit_id: int, c=None) -> bool:
    """True iff ``f(A x)`` equals the representative of ``orbit_id``."""
    if orbit_id != 10 and c is not None:
        raise ValueError("the parameter c only applies to orbit 10")
    target = orbit_representative(orbit_id, c)
    A = A if isinstance(A, Matrix) else Matrix(A)
    if not A.det():
        raise ValueError("witness transform is singular")
    return compose(f, A) == target
