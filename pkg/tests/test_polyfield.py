from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from autsolv.errors import ArityError, FieldError, SingularMatrixError, ZeroPolynomialError
from autsolv.polyfield import (
    QQ,
    FieldSpec,
    LinearChange,
    Polynomial,
    apply_linear_change,
    homogeneous_components,
    lowest_component,
    order,
    partial_derivative,
    poly_mul,
    variables,
)

from conftest import polynomials

F7 = FieldSpec(7)
N = 3


def test_field_validation():
    for bad in (4, 1, -3, 9):
        with pytest.raises(FieldError):
            FieldSpec(bad)
    assert FieldSpec(2).characteristic == 2


def test_products():
    X, Y = variables(QQ, 2)
    assert poly_mul(X + Y, X + Y) == X**2 + 2 * X * Y + Y**2
    X2, Y2 = variables(FieldSpec(2), 2)
    assert poly_mul(X2 + Y2, X2 + Y2) == X2**2 + Y2**2
    assert (X**2 + Y**2) * (X**2 - Y**2) == X**4 - Y**4


def test_arity_mismatch():
    X, = variables(QQ, 1)
    Y, _ = variables(QQ, 2)
    with pytest.raises(ArityError):
        poly_mul(X, Y)
    with pytest.raises(ArityError):
        X + variables(F7, 1)[0]


def test_partial_derivatives():
    X1, X2 = variables(QQ, 2)
    assert partial_derivative(X1**3 + X1**2 * X2, 0) == 3 * X1**2 + 2 * X1 * X2
    assert partial_derivative(X1**2, 1).is_zero()
    X, = variables(F7, 1)
    assert partial_derivative(X**7, 0).is_zero()
    with pytest.raises(ArityError):
        partial_derivative(X1, 2)


def test_homogeneous_components():
    X, Y = variables(QQ, 2)
    f = X**2 + X * Y + Y**3
    assert homogeneous_components(f) == {2: X**2 + X * Y, 3: Y**3}
    assert homogeneous_components(X**2 + Y**2) == {2: X**2 + Y**2}
    assert homogeneous_components(X**4 * Y**5) == {9: X**4 * Y**5}
    assert order(f) == 2 and lowest_component(f) == X**2 + X * Y
    with pytest.raises(ZeroPolynomialError):
        homogeneous_components(Polynomial.zero(QQ, 2))


def test_linear_change_examples():
    X, Y = variables(QQ, 2)
    swap = LinearChange(QQ, [[0, 1], [1, 0]])
    assert apply_linear_change(X * Y, swap) == X * Y
    f = X**3 + 2 * X * Y**2
    assert apply_linear_change(f, LinearChange(QQ, [[5, 0], [0, 5]])) == f.scale(125)
    assert apply_linear_change(X**2, LinearChange(QQ, [[2, 0], [0, 1]])) == 4 * X**2
    with pytest.raises(SingularMatrixError):
        LinearChange(QQ, [[1, 2], [2, 4]])


def test_canonical_printing():
    X1, X2 = variables(QQ, 2)
    assert (X1**2 - Fraction(1, 3) * X2).to_str() == "X1^2 - 1/3*X2"
    assert str(Polynomial.zero(QQ, 2)) == "0"
    assert (-X1 * X2**2 + 3).to_str(("a", "b")) == "-a*b^2 + 3"


def test_zero_degree_sentinel():
    z = Polynomial.zero(QQ, 2)
    assert z.degree is None and z.order is None


@settings(max_examples=200, derandomize=True)
@given(polynomials(QQ, N), polynomials(QQ, N), polynomials(QQ, N))
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f + g == g + f
    assert f - f == Polynomial.zero(QQ, N)
    if f and g:
        assert (f * g).degree == f.degree + g.degree


@settings(max_examples=200, derandomize=True)
@given(polynomials(F7, N), polynomials(F7, N), polynomials(F7, N))
def test_ring_axioms_mod_p(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@settings(max_examples=200, derandomize=True)
@given(polynomials(QQ, N), polynomials(QQ, N), st.integers(0, N - 1))
def test_leibniz(f, g, i):
    assert partial_derivative(f * g, i) == partial_derivative(f, i) * g + f * partial_derivative(g, i)


@settings(max_examples=200, derandomize=True)
@given(st.data(), st.sampled_from([QQ, FieldSpec(5)]))
def test_euler_identity(data, field):
    f = data.draw(polynomials(field, N, max_deg=4))
    xs = variables(field, N)
    for d, comp in (homogeneous_components(f).items() if f else []):
        euler = sum((x * partial_derivative(comp, i) for i, x in enumerate(xs)), Polynomial.zero(field, N))
        assert euler == comp.scale(d)


matrices = st.lists(st.lists(st.integers(-2, 2), min_size=N, max_size=N), min_size=N, max_size=N)


@settings(max_examples=200, derandomize=True)
@given(polynomials(QQ, N), polynomials(QQ, N), matrices, matrices)
def test_linear_change_laws(f, g, a, b):
    try:
        M, Nm = LinearChange(QQ, a), LinearChange(QQ, b)
    except SingularMatrixError:
        return
    assert apply_linear_change(f * g, M) == apply_linear_change(f, M) * apply_linear_change(g, M)
    assert apply_linear_change(apply_linear_change(f, M), Nm) == apply_linear_change(f, Nm.compose(M))
    if f:
        assert apply_linear_change(f, M).degree <= f.degree
        if f.is_homogeneous() and apply_linear_change(f, M):
            assert apply_linear_change(f, M).is_homogeneous()
