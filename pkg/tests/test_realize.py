import random
from fractions import Fraction

import pytest

from quadpoisson.realize import (
    CASE_IDS,
    BackendMismatch,
    DegenerateParams,
    OperatorAlgebra,
    SeriesElement,
    UnsupportedSymbol,
    catalog,
    format_operator,
    independence,
    monomial_rank,
    solve_case10,
    sym,
    verify,
)
from quadpoisson.realize.series import FV, RP, V as VVAR

# every catalog entry with the parameters used throughout the tests
ENTRIES = [
    ("orbit1", {}),
    ("orbit2", {}),
    ("orbit3", {}),
    ("orbit4", {}),
    ("rank1", {"f": "x1^2*x2 - x2^3"}),
    ("orbit5", {}),
    ("orbit6", {}),
    ("orbit7", {}),
    ("orbit8", {}),
    ("orbit9", {}),
    ("orbit9", {"k": "k", "c": "c", "d": "d"}),
    ("rank2-first", {}),
    ("rank2-first", {"k": "k", "k1": "k1", "c": "c"}),
    ("rank2-second", {"c1": 0, "c2": 1}),
    ("rank2-second", {"c1": "1/6", "c2": 2}),
    ("rank2-second", {"c1": 1, "c2": 0}),
    ("rank2-second", {"c1": "c1", "c2": "c2"}),
    ("rank3-quantum", {}),
    ("rank3-quantum", {"source": "db", "lam": 2}),
    ("rank3-quantum", {"k1": "k1", "k2": "k2", "k3": "k3"}),
    ("rank3-third", {}),
    ("rank3-third", {"source": "db"}),
    ("rank3-third", {"a": 0, "k": "k", "k1": "k1"}),
    ("rank3-third", {"a": "a", "k": "k", "k1": "k1"}),
]


def ident(entry):
    name, params = entry
    return name + "".join(f"-{k}={v}" for k, v in params.items())


# -- Weyl backend --------------------------------------------------------------

@pytest.fixture
def weyl():
    return OperatorAlgebra(1, d=sym("d"))


def test_weyl_products(weyl):
    p, q = weyl.p(), weyl.q()
    assert p * q == q * p + 1
    assert format_operator(q * p) == "q*p"
    assert weyl.pd() * q - q * weyl.pd() == weyl.d * weyl.pd() * weyl.pinv()


def test_weyl_identities(weyl):
    p, q, pinv, lnp = weyl.p(), weyl.q(), weyl.pinv(), weyl.lnp()
    assert p.commutator(q) == 1
    assert pinv.commutator(q) == -pinv * pinv
    assert p.commutator(lnp).is_zero()
    assert lnp.commutator(q) == pinv
    assert p * pinv == 1


def test_formal_exponent_required(weyl):
    with pytest.raises(UnsupportedSymbol):
        OperatorAlgebra(1).pd()


def _random_weyl(alg, rng):
    gens = [alg.p(), alg.q(), alg.pinv(), alg.lnp(), alg.pd(), alg.sym("w"), alg.sym("h")]
    out = alg.zero()
    for _ in range(rng.randint(1, 3)):
        term = alg.scalar(rng.randint(-2, 2))
        for _ in range(rng.randint(0, 2)):
            term = term * rng.choice(gens)
        out = out + term
    return out


def _random_shift(alg, rng):
    gens = [alg.sx, alg.sy, alg.shift(-1, 0), alg.exp(sym("k"), 1), alg.exp(sym("k1"), -1, 2), alg.sym("x"),
            alg.sym("y"), alg.sym("w")]
    out = alg.zero()
    for _ in range(rng.randint(1, 3)):
        term = alg.scalar(rng.randint(-2, 2))
        for _ in range(rng.randint(0, 3)):
            term = term * rng.choice(gens)
        out = out + term
    return out


def test_associativity_weyl(weyl):
    rng = random.Random(14)
    for _ in range(100):
        a, b, c = (_random_weyl(weyl, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_associativity_shift():
    alg = OperatorAlgebra(1)
    rng = random.Random(15)
    for _ in range(100):
        a, b, c = (_random_shift(alg, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_associativity_tensor_product():
    alg = OperatorAlgebra(1, d=sym("d"))
    rng = random.Random(16)
    for _ in range(100):
        a, b, c = (_random_weyl(alg, rng) * _random_shift(alg, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_two_weyl_pairs_commute():
    alg = OperatorAlgebra(2)
    assert alg.p(0).commutator(alg.q(1)).is_zero()
    assert alg.p(1).commutator(alg.q(1)) == 1


# -- shift backend -------------------------------------------------------------

def test_shift_examples():
    alg = OperatorAlgebra(1)
    k, w = sym("k"), sym("w")
    assert alg.sx * alg.exp(k, 1) == k * alg.exp(k, 1) * alg.sx
    assert alg.sx * alg.sy == alg.sy * alg.sx
    a = w * alg.exp(k, -1) * alg.sx
    assert alg.sx * a == (a * alg.sx) * (1 / k)
    assert alg.sx * alg.sym("x") == (alg.sym("x") + 1) * alg.sx
    assert alg.sy * alg.sym("x") == alg.sym("x") * alg.sy


# -- catalog -------------------------------------------------------------------

@pytest.mark.parametrize("entry", ENTRIES, ids=ident)
def test_catalog_verifies(entry):
    name, params = entry
    R = catalog(name, **params)
    assert all(r.is_zero() for r in verify(R))


def test_every_catalog_id_is_exercised():
    assert {name for name, _ in ENTRIES} == set(CASE_IDS)


def test_catalog_examples():
    R = catalog("rank3-quantum", k1="k1", k2="k2", k3="k3")
    assert R.triple[0] == R.algebra.sx
    R = catalog("orbit5")
    alg = R.algebra
    assert R.triple[0] == alg.pinv()
    assert R.triple[1] == -(alg.sym("h") * alg.q() + alg.sym("w"))


def test_rank2_second_regimes():
    assert catalog("rank2-second", c1=0).params["regime"] == "c1 = 0"
    assert catalog("rank2-second", c1="1/6").params["regime"] == "1 - 6*c1 = 0"
    R = catalog("rank2-second", c1=1)
    assert R.params["regime"] == "p^d"
    # d = 2 - 1/(2 c1)
    assert R.algebra.d_rational == Fraction(3, 2)
    assert catalog("rank2-second", c1=Fraction(1, 4)).algebra.d_rational == 0


def test_perturbation_breaks_orbit5():
    R = catalog("orbit5")
    x1, x2, x3 = R.triple
    res = verify((x1, x2, x3 + R.algebra.q()), R.relations)
    assert res[0].is_zero()
    assert not res[2].is_zero()


def test_degenerate_parameters():
    with pytest.raises(DegenerateParams, match="1 - k\\^3 = 0"):
        catalog("orbit7", k=1, c=1, d=1)
    with pytest.raises(DegenerateParams):
        catalog("rank2-first", k=1, k1=1, c=1)
    with pytest.raises(DegenerateParams):
        catalog("rank1", f="x3^3")
    with pytest.raises(ValueError):
        catalog("orbit11")


def test_backend_mismatch():
    a, b = OperatorAlgebra(1), OperatorAlgebra(1)
    with pytest.raises(BackendMismatch):
        verify((a.p(), a.q(), b.p()), catalog("orbit5").relations)


@pytest.mark.parametrize("entry", [e for e in ENTRIES if e[0] != "orbit1"], ids=ident)
def test_independence_degree_three(entry):
    name, params = entry
    assert independence(catalog(name, **params), 3)


def test_independence_rank_counts():
    assert monomial_rank(catalog("orbit3"), 3) == (20, 20)
    assert independence(catalog("rank3-quantum"), 3)


def test_degenerate_triple_is_dependent():
    x1, x2, _ = catalog("orbit3").triple
    assert not independence((x1, x2, x1), 2)


# -- orbit 10 series -----------------------------------------------------------

def test_series_grading():
    rng = random.Random(17)
    N = 5

    def rand():
        coeffs = {}
        for _ in range(3):
            i, j = rng.randint(0, 2), rng.randint(0, 2)
            coeffs[(i, j)] = RP({(rng.randint(0, 3),): FV(rng.randint(-3, 3))})
        return SeriesElement(coeffs, N)

    for _ in range(30):
        a, b = rand(), rand()
        for (i, j) in a.coeffs:
            for (k, l) in b.coeffs:
                mono_a = SeriesElement({(i, j): a.coeff(i, j)}, N)
                mono_b = SeriesElement({(k, l): b.coeff(k, l)}, N)
                for (r, s) in (mono_a * mono_b).coeffs:
                    assert r + s == i + j + k + l
                    assert r >= i + k
        c = rand()
        assert (a * b) * c == a * (b * c)


def test_series_commutator():
    p, q = SeriesElement.p(3), SeriesElement.q(3)
    assert p.commutator(q) == SeriesElement.hbar(3)


def test_solve_case10_leading_terms():
    sol = solve_case10(1, 0, 3)
    assert sol.u_value == VVAR ** 3
    assert sol.ok()
    x1, x2, x3 = sol.triple
    assert x1.coeff(0, 1) == 3 * VVAR ** 2
    assert x1.coeff(0, 0) == 0
    assert x2.coeff(0, 0) == VVAR
    assert x3 == SeriesElement.p(3)


def test_solve_case10_second_order():
    sol = solve_case10(2, 3, 2)
    assert sol.triple[0].coeff(0, 1) == 3 * VVAR ** 2
    assert all(r.is_zero() for r in sol.residual)
    with pytest.raises(ValueError):
        solve_case10(1, 0, 1)


def test_solve_case10_residual_order_four():
    sol = solve_case10(1, 1, 4)
    triple, residual, u = sol
    assert all(r.is_zero() for r in residual)
    assert u == VVAR ** 3
    assert all(not d for d in sol.deltas)


def _rank2_second_x3(d):
    # c1 = 1, c2 = 1 realization rebuilt with an arbitrary exponent d
    alg = OperatorAlgebra(1, d=d)
    p, q, pinv = alg.p(), alg.q(), alg.pinv()
    h, w, z = alg.sym("h"), alg.sym("w"), alg.sym("z")
    g = h * q + w
    lead = alg.scalar(Fraction(-1, 5)) * (3 * h * h - 3)
    x3 = 2 * (g * g * p + h * g) + lead * pinv + z * alg.pd()
    return pinv, 2 * g, x3


def test_printed_exponent_sign_does_not_verify():
    # d = 2 - 1/(2 c1) verifies; the opposite sign 1/(2 c1) - 2 does not
    rels = catalog("rank2-second", c1=1, c2=1).relations
    assert all(r.is_zero() for r in verify(_rank2_second_x3(Fraction(3, 2)), rels))
    assert not all(r.is_zero() for r in verify(_rank2_second_x3(Fraction(-3, 2)), rels))
