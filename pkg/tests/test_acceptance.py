"""Acceptance criteria 1 to 11.

Each criterion is one test.  Every test records a one-line verdict that is
printed in the terminal summary (see ``conftest.pytest_terminal_summary``);
running this file directly prints the same lines.  All comparisons are
exact.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from math import comb

import pytest

from quadpoisson.bracket import QuadraticBracket, dualize, from_case, jacobi_residual, p_data, transform
from quadpoisson.classify import classify, family_cubic
from quadpoisson.cli import run
from quadpoisson.exact import Poly, RatFunc
from quadpoisson.flatness import (
    TensorSubspace,
    commutator_space,
    distributivity,
    dual_subspace,
    intersection_W,
    splitting_check,
    symmetric_space,
)
from quadpoisson.lang import format_bracket, format_poly, parse_bracket, parse_cubic, parse_poly
from quadpoisson.quantize import RewritingSystem, diamond_residual, graded_dimension, relations, triangularize
from quadpoisson.realize import catalog, independence, solve_case10, verify
from quadpoisson.realize.series import V, SeriesElement

from conftest import CANONICAL, DATA, random_bracket, random_invertible

RESULTS: dict[int, str] = {}
X1, X2, X3 = Poly.gens()
NONJACOBI = QuadraticBracket.from_polys(X1 * X1, X2 * X2, X3 * X3)


def record(n: int, ok: bool, detail: str, start: float) -> None:
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}  ({time.perf_counter() - start:.2f} s)"
    assert ok, RESULTS[n]


def _witness_case(label: str) -> str | None:
    return label if label in ("a", "b", "cb") else None


# ---------------------------------------------------------------------------

def test_criterion_01_classification():
    start = time.perf_counter()
    rng = random.Random(101)
    bad = []
    for label, build in CANONICAL.items():
        b = build()
        if classify(b).case_label != label:
            bad.append(label)
        for _ in range(20):
            if classify(transform(b, random_invertible(rng))).case_label != label:
                bad.append(label)
    record(1, not bad, f"7 cases x 21 brackets, mislabelled: {sorted(set(bad)) or 'none'}", start)


def test_criterion_02_conjugation_rule():
    start = time.perf_counter()
    rng = random.Random(102)
    failures = 0
    for n in range(100):
        b = random_bracket(rng) if n % 2 else transform(rng.choice(list(CANONICAL.values()))(), random_invertible(rng))
        A = random_invertible(rng)
        P = p_data(b).P
        if P.trace() != 0 or p_data(transform(b, A)).P != A * P * A.inverse():
            failures += 1
    record(2, failures == 0, f"100 (b, A) pairs, failures: {failures}", start)


def _random_poisson(rng: random.Random) -> QuadraticBracket:
    """A Poisson bracket from a random admissible family, in random coordinates."""
    label = rng.choice(sorted(CANONICAL))
    r = lambda: Fraction(rng.randint(-3, 3), rng.randint(1, 2))  # noqa: E731
    nz = lambda: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))  # noqa: E731
    cubic = Poly({m: r() for m in ((3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0), (1, 1, 1), (0, 0, 3))})
    if label == "a":
        b = from_case("a", cubic)
    elif label == "b":
        b = from_case("b", Poly({m: c for m, c in cubic.terms.items() if m[2] == 0}))
    elif label == "ca":
        b = from_case("ca", family_cubic("ca", c1=r(), c2=r()), lam=nz())
    elif label == "cb":
        b = from_case("cb", family_cubic("cb", c1=r(), c2=r()))
    elif label == "da":
        b = from_case("da", family_cubic("da", c=r()), lam1=1, lam2=rng.choice([2, 3, -3, Fraction(1, 2)]))
    elif label == "db":
        b = from_case("db", Poly({(2, 0, 1): r(), (1, 1, 1): r(), (0, 2, 1): r()}), lam=nz())
    else:
        b = from_case("dc", family_cubic("dc", c=r()), lam=nz())
    return transform(b, random_invertible(rng, -2, 2))


def test_criterion_03_jacobi_equivalence():
    start = time.perf_counter()
    rng = random.Random(103)
    disagreements = 0
    poisson = 0
    for n in range(200):
        if n % 2 == 0:
            b = _random_poisson(rng)
        else:
            b = random_bracket(rng, density=rng.choice([0.2, 0.5, 1.0]))
        linear, triple = jacobi_residual(b)
        disagreements += (not linear) != (not triple)
        poisson += not triple
    record(3, disagreements == 0 and poisson >= 100,
           f"200 brackets ({poisson} Poisson), disagreements: {disagreements}", start)


def test_criterion_04_pbw_at_desk_scale():
    start = time.perf_counter()
    rows = {}
    ok = True
    for label, build in CANONICAL.items():
        rels = relations(build())
        res = diamond_residual(triangularize(rels))
        dims = [graded_dimension(rels, d) for d in range(2, 7)]
        rows[label] = [g for g, _ in dims]
        ok = ok and not res and all(g == z == comb(d + 2, 2) for d, (g, z) in zip(range(2, 7), dims))
    row = sorted({tuple(v) for v in rows.values()})
    record(4, ok, f"7 families confluent, dimension rows {row}", start)


def test_criterion_05_negative_control():
    start = time.perf_counter()
    rels = relations(NONJACOBI)
    split = splitting_check(rels, 3)
    try:
        residual = diamond_residual(triangularize(rels))
    except ArithmeticError:
        residual = None
    q = RatFunc(5)
    rs = RewritingSystem({(1, 0): {(0, 1): q}, (2, 1): {(1, 2): 1}, (2, 0): {(0, 2): 1, (1, 1): 1}})
    counter = diamond_residual(rs)
    ok = split == (17, 18, False) and bool(residual) and counter == {(1, 1, 1): 1 - q}
    record(5, ok, f"splitting(3) = {split}, diamond residual nonzero: {bool(residual)}, "
                  f"q-system residual (1-q)*x2^3: {counter == {(1, 1, 1): 1 - q}}", start)


def test_criterion_06_W_dimension():
    start = time.perf_counter()
    got = {}
    for label, build in CANONICAL.items():
        got[label] = intersection_W(relations(build()), _witness_case(label)).as_tuple()
    got["zero"] = intersection_W(relations(QuadraticBracket.zero()), "a").as_tuple()
    neg = intersection_W(relations(NONJACOBI)).as_tuple()
    ok = all(v == (1, 1, True) for v in got.values()) and neg[:2] == (0, 1) and not neg[2]
    bad = [k for k, v in got.items() if v != (1, 1, True)]
    record(6, ok, f"dim W = (1, 1) with witness on 8 brackets (exceptions: {bad or 'none'}), "
                  f"negative control {neg[:2]}", start)


def test_criterion_07_duality():
    start = time.perf_counter()
    rng = random.Random(107)
    failures = 0
    for _ in range(50):
        b = random_bracket(rng)
        I = TensorSubspace(2, [r.terms for r in relations(b)])
        D = dual_subspace(I)
        if not dual_subspace(D).same_as(I) or I.dim() + D.dim() != 9 or dualize(dualize(b)) != b:
            failures += 1
    record(7, failures == 0, f"50 random brackets, failures: {failures}", start)


def test_criterion_08_distributivity():
    start = time.perf_counter()
    checks = {}
    for name, space in (("commutator", commutator_space()), ("symmetric", symmetric_space())):
        for k in (4, 5):
            for which in ("eq1", "eq3"):
                checks[(name, k, which)] = distributivity(space, k, which)
    failed = [k for k, v in checks.items() if not v]
    record(8, not failed, f"{len(checks)} lattice checks at h = 0, failed: {failed or 'none'}", start)


ACCEPTANCE_ENTRIES = [
    ("orbit2", {}), ("orbit3", {}), ("orbit4", {}),
    ("orbit5", {}), ("orbit6", {}),
    ("orbit7", {}), ("orbit8", {}), ("orbit9", {}),
    ("rank2-first", {}),
    ("rank2-second", {"c1": 0, "c2": 1}),
    ("rank2-second", {"c1": "1/6", "c2": 1}),
    ("rank2-second", {"c1": 1, "c2": 1}),
    ("rank3-quantum", {}),
    ("rank3-third", {"a": 0, "k": "k", "k1": "k1"}),
    ("rank3-third", {}),
]


def test_criterion_09_realizations():
    start = time.perf_counter()
    failed = []
    for name, params in ACCEPTANCE_ENTRIES:
        R = catalog(name, **params)
        if not all(r.is_zero() for r in verify(R)) or not independence(R, 3):
            failed.append((name, params))
    record(9, not failed, f"{len(ACCEPTANCE_ENTRIES)} realizations verified and independent to degree 3, "
                          f"failed: {failed or 'none'}", start)


def test_criterion_10_orbit10():
    start = time.perf_counter()
    sol = solve_case10(1, 0, 4)
    x1, x2, x3 = sol.triple
    leading = x1.coeff(0, 0) == 0 and x1.coeff(0, 1) == 3 * V ** 2 and x2.coeff(0, 0) == V
    ok = (sol.u_value == V ** 3 and leading and x3 == SeriesElement.p(4)
          and all(r.is_zero() for r in sol.residual))
    record(10, ok, f"u = {sol.u_value.as_expr()}, x1 = 3v^2 q + ..., x2 = v + ..., "
                   f"residuals zero mod degree 5: {all(r.is_zero() for r in sol.residual)}", start)


def test_criterion_11_parser_and_cli(capsys):
    start = time.perf_counter()
    rng = random.Random(111)
    round_trips = 0
    for _ in range(100):
        p = Poly({tuple(rng.randint(0, 3) for _ in range(3)): Fraction(rng.randint(-9, 9), rng.randint(1, 6))
                  for _ in range(rng.randint(0, 6))})
        round_trips += parse_poly(format_poly(p)) == p
    golden = 0
    for path in sorted(DATA.iterdir()):
        if path.name == "missing.bracket":
            continue
        if path.suffix == ".bracket":
            b = parse_bracket(path.read_text())
            golden += parse_bracket(format_bracket(b)) == b
        else:
            f = parse_cubic(path.read_text())
            golden += parse_cubic(f"f = {format_poly(f)}") == f
    n_golden = sum(1 for p in DATA.iterdir() if p.name != "missing.bracket")
    from test_cli import CONTRACT

    contract = 0
    for argv, code in CONTRACT:
        contract += run(argv) == code
    capsys.readouterr()
    ok = round_trips == 100 and golden == n_golden and contract == len(CONTRACT)
    record(11, ok, f"round trips {round_trips}/100, golden files {golden}/{n_golden}, "
                   f"exit codes {contract}/{len(CONTRACT)}", start)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
