from fractions import Fraction

import pytest
from hypothesis import given, settings

from autsolv.algebra import IdealPresentation
from autsolv.cli import fixture_names, fixture_text
from autsolv.errors import FieldError, ParseError
from autsolv.parser import format_presentation, parse_polynomial, parse_presentation
from autsolv.polyfield import QQ, FieldSpec, variables

from conftest import polynomials


def test_basic_presentation():
    p = parse_presentation("field 0\nvars X Y\ngen X^2 + Y^2\n")
    X, Y = variables(QQ, 2)
    assert p.field == QQ and p.names == ("X", "Y") and p.power is None
    assert p.generators == (X**2 + Y**2,)


def test_expression_grammar():
    X1, X2, X3 = variables(QQ, 3)
    names = ("X1", "X2", "X3")
    assert parse_polynomial("X1*X2^2 - 3*X3^3", QQ, names) == X1 * X2**2 - 3 * X3**3
    assert parse_polynomial("-(X1 + 1/2*X2) * --X3", QQ, names) == -X1 * X3 - Fraction(1, 2) * X2 * X3
    with pytest.raises(ParseError):
        parse_polynomial("(X1 + X2)^2", QQ, names)  # powers apply to variables only
    assert parse_polynomial("(X1 - X2)*(X1 + X2)", QQ, names) == X1**2 - X2**2
    assert parse_polynomial("2/4*X1", QQ, names) == Fraction(1, 2) * X1


def test_char_p_coefficients():
    F5 = FieldSpec(5)
    a, b = variables(F5, 2)
    assert parse_polynomial("7*a + 1/2*b", F5, ("a", "b")) == 2 * a + 3 * b
    with pytest.raises(ParseError):
        parse_polynomial("1/5*a", F5, ("a", "b"))


def test_comments_blank_lines_and_lowey():
    p = parse_presentation("# header\n\nfield 7   # a prime\nvars a b\nlowey 4\ngen a*b  # comment\n")
    assert p.field == FieldSpec(7) and p.power == 4 and len(p.generators) == 1


def test_field_errors():
    with pytest.raises(FieldError):
        parse_presentation("field 4\nvars X\n")
    with pytest.raises(FieldError):
        parse_presentation("field 1\nvars X\n")


@pytest.mark.parametrize("text, line, col", [
    ("field 0\nvars X Y\ngen X^2 + Z", 3, 11),
    ("field 0\nvars X Y\ngen X^2 +", 3, 10),
    ("field 0\nvars X Y\ngen (X + Y", 3, 11),
    ("field 0\nvars X Y\ngen X ^ Y", 3, 9),
    ("field 0\nvars X Y\ngen X $ Y", 3, 7),
    ("field 0\nvars X\n  frobnicate 3", 3, 3),
    ("field zero\nvars X", 1, 6),
    ("field 0\nfield 0\nvars X", 2, 1),
    ("field 0\nvars X X", 2, 5),
    ("vars X\ngen X^2", 2, 1),
    ("field 0\nvars X\nlowey 0", 3, 6),
    ("field 0\nvars X\ngen X - X", 3, 5),
    ("field 0\nvars X\ngen 1/0", 3, 5),
])
def test_parse_errors_carry_location(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_missing_header_lines():
    with pytest.raises(ParseError):
        parse_presentation("vars X\n")
    with pytest.raises(ParseError):
        parse_presentation("field 0\n")


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_round_trip(name):
    p = parse_presentation(fixture_text(name))
    text = format_presentation(p)
    q = parse_presentation(text)
    assert q == p
    assert format_presentation(q) == text


@settings(max_examples=200, derandomize=True, deadline=None)
@given(polynomials(QQ, 3, max_deg=4, max_terms=6, min_order=0))
def test_printed_polynomials_parse_back(f):
    names = ("X1", "X2", "X3")
    if f.is_zero():
        return
    assert parse_polynomial(f.to_str(names), QQ, names) == f
    p = IdealPresentation(QQ, 3, (f,), 5, names)
    assert parse_presentation(format_presentation(p)) == p
