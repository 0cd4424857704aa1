from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from xjacobi.errors import OverflowInExact, SingularIntegrand
from xjacobi.polynomial import Polynomial, RationalFunction

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=20)
coeff_lists = st.lists(rationals, min_size=0, max_size=7)


def test_derivative_of_constant_is_zero():
    assert Polynomial([Fraction(7)]).deriv().is_zero()
    assert Polynomial([Fraction(7)]).deriv().degree == -1


def test_evaluate_square():
    assert Polynomial([0, 0, 1])(3) == 9


def test_exact_evaluation_stays_rational():
    p = Polynomial([Fraction(1, 3), Fraction(2, 5)])
    assert p(Fraction(5, 2)) == Fraction(4, 3)


def test_float_evaluation_on_arrays():
    p = Polynomial([1, 2, 3])
    x = np.array([0.0, 1.0, -1.0])
    np.testing.assert_allclose(p(x), [1.0, 6.0, 2.0])


def test_trailing_zeros_are_trimmed():
    assert Polynomial([1, 2, 0, 0]).degree == 1


def test_non_finite_coefficient_rejected():
    with pytest.raises(OverflowInExact):
        Polynomial([1.0, float("inf")])


def test_order_at_and_division():
    p = Polynomial([1, -1]) ** 3 * Polynomial([2, 1])
    assert p.order_at(Fraction(1)) == 3
    q = p.divide_by_root_power(Fraction(1), 2)
    assert q * Polynomial([1, -1]) ** 2 == p
    with pytest.raises(SingularIntegrand):
        p.divide_by_root_power(Fraction(1), 4)


def test_compose_linear():
    p = Polynomial([0, 0, 1])
    assert p.compose_linear(1, 2) == Polynomial([1, 4, 4])


def test_coeff_strings():
    assert Polynomial([Fraction(3, 2), Fraction(-1, 2)]).coeff_strings() == ["3/2", "-1/2"]
    assert Polynomial().coeff_strings() == ["0"]


def test_rational_function_difference():
    r = RationalFunction(Polynomial([1]), Polynomial([0, 1]))
    d = r - Polynomial([1])
    assert d(Fraction(2)) == Fraction(-1, 2)
    assert not d.is_polynomial()


@given(coeff_lists, coeff_lists, rationals)
def test_sum_and_product_are_ring_homomorphisms(p, q, x):
    P, Q = Polynomial(p), Polynomial(q)
    assert (P + Q)(x) == P(x) + Q(x)
    assert (P * Q)(x) == P(x) * Q(x)
    assert (P - Q)(x) == P(x) - Q(x)


@given(coeff_lists, coeff_lists)
def test_product_rule(p, q):
    P, Q = Polynomial(p), Polynomial(q)
    assert (P * Q).deriv() == P.deriv() * Q + P * Q.deriv()


@given(coeff_lists, rationals)
def test_float_and_exact_evaluation_agree(p, x):
    P = Polynomial(p)
    exact = float(P(x))
    approx = P.to_float()(float(x))
    scale = sum(abs(float(c)) * abs(float(x)) ** k for k, c in enumerate(p)) or 1.0
    assert abs(exact - approx) <= 1e-13 * scale
