from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkmcohom.oracle import divisibility_by_division, random_hyperplane_check
from gkmcohom.polyring import (
    LinearForm,
    NotDivisible,
    Polynomial,
    ZeroVector,
    divide_by_linear,
    divisible_by,
    monomial_basis,
    parse_poly,
    render,
    restrict_to_hyperplane,
    serialize_poly,
)
from strategies import fractions, linear_forms, polynomials

x = lambda i, n=3: Polynomial.variable(n, i)  # noqa: E731


def test_arithmetic_basics():
    a, b = x(0), x(1)
    p = (a + b) * (a - b)
    assert p == a * a - b * b
    assert p.degree() == 2
    assert p.is_homogeneous()
    assert (a + 1).is_homogeneous() is False
    assert Polynomial.zero(3).degree() == -1
    assert (a * Fraction(1, 2)).coefficient((1, 0, 0)) == Fraction(1, 2)
    assert (a**3).coefficient((3, 0, 0)) == 1


def test_zero_terms_pruned():
    p = Polynomial(2, {(1, 0): 0, (0, 1): Fraction(2)})
    assert p.terms == {(0, 1): Fraction(2)}
    assert x(0, 2) - x(0, 2) == Polynomial.zero(2)


def test_monomial_basis_order():
    assert monomial_basis(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomial_basis(3, 4)) == 15
    assert monomial_basis(3, 0) == [(0, 0, 0)]


def test_linear_form_canonical():
    assert LinearForm((-2, 4)).coeffs == (1, -2)
    assert LinearForm((0, -3)).coeffs == (0, 1)
    with pytest.raises(ZeroVector):
        LinearForm((0, 0))


def test_restriction_kills_multiples():
    alpha = (1, -1, 0)
    p = Polynomial.linear(alpha) * (x(0) + x(2) * 3)
    assert restrict_to_hyperplane(p, alpha) == Polynomial.zero(3)
    assert divisible_by(p, alpha)
    assert not divisible_by(p + x(2), alpha)


def test_division_exact_and_failure():
    a, b = x(0, 2), x(1, 2)
    assert divide_by_linear(a * a - b * b, (1, -1)) == a + b
    with pytest.raises(NotDivisible):
        divide_by_linear(a * a + b * b, (1, -1))


def test_render():
    a1, a2, a3 = x(0), x(1), x(2)
    assert render(a2 - a3) == "a2 - a3"
    assert render(a1 * a1 - a1 * a2 * Fraction(3, 2) + 5) == "a1^2 - 3/2*a1*a2 + 5"
    assert render(Polynomial.zero(3)) == "0"


def test_serialize_roundtrip_fixed():
    p = x(0) * Fraction(3, 2) - x(1) ** 2
    data = serialize_poly(p)
    assert data == [[[1, 0, 0], 3, 2], [[0, 2, 0], -1, 1]]
    assert parse_poly(data, 3) == p


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(polynomials(n), linear_forms(n))))
def test_divisibility_agrees_with_oracles(pair):
    p, alpha = pair
    n = p.num_vars
    # also try genuine multiples so that the True branch is exercised
    for q in (p, p * Polynomial.linear(alpha)):
        ours = divisible_by(q, alpha)
        assert ours == divisibility_by_division(q, alpha)
        assert ours == random_hyperplane_check(q, alpha)
    assert n == len(alpha)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(polynomials(n), polynomials(n), linear_forms(n), fractions())))
def test_restriction_is_linear(data):
    p, q, alpha, c = data
    r = lambda f: restrict_to_hyperplane(f, alpha)  # noqa: E731
    assert r(p + q * c) == r(p) + r(q) * c


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(polynomials(n), polynomials(n), polynomials(n))))
def test_ring_axioms_exact(data):
    p, q, s = data
    assert (p + q) * s == p * s + q * s
    assert (p * q) * s == p * (q * s)
    assert p * q == q * p
    assert (p - p) == Polynomial.zero(p.num_vars)


@given(st.integers(1, 3).flatmap(lambda n: polynomials(n)))
def test_serialize_roundtrip(p):
    assert parse_poly(serialize_poly(p), p.num_vars) == p


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(polynomials(n), linear_forms(n))))
def test_division_inverts_multiplication(pair):
    p, alpha = pair
    # weights are defined up to sign, so division is by the canonical representative
    assert divide_by_linear(p * LinearForm(alpha).lift(), alpha) == p
