import random
import string
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadpoisson.bracket import QuadraticBracket, from_case
from quadpoisson.exact import H, Matrix, Poly
from quadpoisson.lang import (
    MissingComponent,
    NonQuadratic,
    ParseError,
    UnknownIdentifier,
    dumps_report,
    format_bracket,
    format_ncpoly,
    format_poly,
    format_scalar,
    loads_report,
    parse_bracket,
    parse_cubic,
    parse_matrix,
    parse_poly,
    parse_scalar,
)
from quadpoisson.quantize import relations, triangularize

from conftest import DATA, polys

x1, x2, x3 = Poly.gens()


def random_poly(rng: random.Random) -> Poly:
    terms = {}
    for _ in range(rng.randint(0, 6)):
        e = tuple(rng.randint(0, 3) for _ in range(3))
        terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Poly(terms)


def test_parse_examples():
    assert parse_poly("x1^2*x3 - 3/2*x2^3") == x1 * x1 * x3 - (x2 ** 3).scale(Fraction(3, 2))
    assert parse_poly("x1*(x2 + x3)") == x1 * x2 + x1 * x3
    assert parse_poly("  - x1 +x2") == x2 - x1


def test_unknown_identifier_position():
    with pytest.raises(UnknownIdentifier) as err:
        parse_poly("x1 + x4")
    assert (err.value.line, err.value.column) == (1, 6)


def test_h_is_rejected_in_brackets():
    with pytest.raises(UnknownIdentifier):
        parse_poly("h*x1")
    assert parse_poly("h*x1", allow_h=True) == x1.scale(H)


@pytest.mark.parametrize("text,column", [
    ("x1 +* x2", 5),
    ("x1/x2", 4),
    ("(x1", 4),
    ("3/0*x1", 3),
    ("x1^-2", 4),
    ("x1 2", 4),
    ("x1 $ x2", 4),
])
def test_syntax_errors_carry_positions(text, column):
    with pytest.raises(ParseError) as err:
        parse_poly(text)
    assert err.value.column == column


def test_round_trip_random_polys():
    rng = random.Random(18)
    for _ in range(100):
        p = random_poly(rng)
        assert parse_poly(format_poly(p)) == p
        assert format_poly(parse_poly(format_poly(p))) == format_poly(p)


@given(polys())
def test_round_trip_property(p):
    assert parse_poly(format_poly(p)) == p


def test_fuzzed_inputs_either_parse_or_fail_with_position():
    rng = random.Random(19)
    alphabet = "x123+-*/^() h" + string.digits
    for _ in range(300):
        text = list(format_poly(random_poly(rng)))
        for _ in range(rng.randint(1, 3)):
            pos = rng.randint(0, len(text))
            text.insert(pos, rng.choice(alphabet))
        src = "".join(text)
        try:
            p = parse_poly(src)
        except ParseError as err:
            assert 1 <= err.column <= len(src) + 1
        else:
            assert parse_poly(format_poly(p)) == p


def test_scalar_printing():
    assert format_scalar((1 - H) / (1 + H)) == "(1 - h)/(1 + h)"
    assert parse_scalar("(1 - h)/(1 + h)") == (1 - H) / (1 + H)
    assert format_scalar(Fraction(-3, 4)) == "-3/4"


def test_parse_bracket_file():
    b = parse_bracket((DATA / "da.bracket").read_text())
    assert b == from_case("da", Poly(), lam1=1, lam2=2)
    with pytest.raises(MissingComponent):
        parse_bracket((DATA / "missing.bracket").read_text())
    with pytest.raises(NonQuadratic):
        parse_bracket("y12 = x1^3\ny23 = 0\ny31 = 0\n")
    with pytest.raises(ParseError):
        parse_bracket("y12 = x1*x2\ny12 = 0\ny23 = 0\ny31 = 0\n")


@pytest.mark.parametrize("name", ["da.bracket", "orbit7.bracket", "nonjacobi.bracket"])
def test_golden_brackets_round_trip(name):
    b = parse_bracket((DATA / name).read_text())
    assert parse_bracket(format_bracket(b)) == b
    assert format_bracket(parse_bracket(format_bracket(b))) == format_bracket(b)


@pytest.mark.parametrize("name", ["cubic_orbit9.cubic", "cubic_orbit5_moved.cubic"])
def test_golden_cubics_round_trip(name):
    f = parse_cubic((DATA / name).read_text())
    assert parse_cubic(f"f = {format_poly(f)}") == f


def test_parse_matrix():
    assert parse_matrix("1,0,0; 0,1/2,0; 0,0,-3") == Matrix.diag(1, Fraction(1, 2), -3)
    with pytest.raises(ParseError):
        parse_matrix("1,0; 0")


def test_rewriting_system_prints_in_fixed_order():
    b = QuadraticBracket.from_polys((x1 * x2).scale(2), (x2 * x3).scale(2), (x1 * x3).scale(2))
    text = str(triangularize(relations(b)))
    assert [line.split(" = ")[0] for line in text.splitlines()] == ["x2*x1", "x3*x1", "x3*x2"]


def test_ncpoly_printing():
    assert format_ncpoly({(1, 0): Fraction(1), (0, 1): Fraction(-2)}) == "-2*x1*x2 + x2*x1"
    assert format_ncpoly({}) == "0"


def test_reports_are_deterministic_and_lossless():
    report = {"b": [Fraction(1, 3), (1 - H) / (1 + H)], "a": x1 * x2, "m": Matrix.identity(2), "ok": True}
    text = dumps_report(report)
    assert text == dumps_report(dict(reversed(list(report.items()))))
    data = loads_report(text)
    assert data == {"a": "x1*x2", "b": ["1/3", "(1 - h)/(1 + h)"], "m": [["1", "0"], ["0", "1"]], "ok": True}
    assert parse_scalar(data["b"][1]) == (1 - H) / (1 + H)
    assert parse_poly(data["a"]) == x1 * x2
