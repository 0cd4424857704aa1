from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xjacobi.errors import BetaZero
from xjacobi.families import nonclassical_jacobi
from xjacobi.functions import Smooth
from xjacobi.polynomial import Polynomial
from xjacobi.sobolev import (
    SobolevElement,
    apply_T,
    decompose,
    norm_comparison,
    s2_equals_v2_check,
    t_matrix,
)

F = Fraction
B2 = F(2)


def test_beta_zero_rejected():
    with pytest.raises(BetaZero):
        SobolevElement(Polynomial([1]), 0)
    with pytest.raises(BetaZero):
        t_matrix(0, 4)


def test_decompose_square():
    d = decompose(SobolevElement(Polynomial([0, 0, F(1)]), B2))
    assert d.g1 == Polynomial([-1, 2])
    assert d.g2.body == Polynomial([1, -2, 1])


def test_decompose_affine():
    d = decompose(SobolevElement(Polynomial([F(3), F(-5)]), B2))
    assert d.g2.body.is_zero()


def test_decompose_high_member():
    d = decompose(SobolevElement(nonclassical_jacobi(5, B2), B2))
    assert d.g1.is_zero()


def test_decompose_smooth_function():
    f = SobolevElement(Smooth(np.exp, np.exp, np.exp, np.exp), 2.0)
    d = decompose(f)
    assert abs(d.g2.trace_value) < 1e-12 and abs(d.g2.trace_derivative) < 1e-12


def test_T_on_members():
    assert apply_T(SobolevElement(Polynomial([1]), B2)).body == Polynomial([1])
    p1 = nonclassical_jacobi(1, B2)
    assert apply_T(SobolevElement(p1, B2)).body == p1 * 3
    p4 = nonclassical_jacobi(4, B2)
    assert apply_T(SobolevElement(p4, B2)).body == p4 * 21


def test_t_matrix_spectrum():
    rep = t_matrix(B2, 5)
    np.testing.assert_allclose(rep.eigenvalues, [1, 3, 7, 13, 21, 31], atol=1e-9)
    assert abs(rep.matrix[0, 4]) <= 1e-9
    assert rep.max_cross_block <= 1e-9
    assert rep.symmetry_defect <= 1e-9


def test_norm_comparison_examples():
    res = norm_comparison(B2, [Polynomial([1, -2, 1]), nonclassical_jacobi(3, B2)])
    assert all(r >= 1 for r in res.ratios)
    span = [nonclassical_jacobi(n, B2) for n in range(2, 9)]
    assert norm_comparison(B2, span).min_ratio >= 1 - 1e-10


@pytest.mark.parametrize("f,member", [
    (Polynomial([1, -2, 1]), True),
    (Polynomial([1]), False),
    (Polynomial([1, -1]), False),
])
def test_two_membership_criteria_agree(f, member):
    v = s2_equals_v2_check(B2, f)
    assert v.agree
    assert v.trace_criterion is member


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.integers(0, 2))
def test_membership_criteria_agree_on_random_polynomials(cs, k):
    f = Polynomial([1, -1]) ** k * Polynomial([F(c) for c in cs])
    if f.is_zero():
        return
    assert s2_equals_v2_check(F(1, 2), f).agree


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=5, max_size=5))
def test_rayleigh_type_bound_in_sobolev_space(cs):
    # phi(T f, f) >= phi(f, f) on S2, since the S2 spectrum starts at lambda_2 >= 1
    from xjacobi.quadrature import SobolevPhi, inner_product
    f = Polynomial()
    for c, n in zip(cs, range(2, 7)):
        f = f + nonclassical_jacobi(n, B2).to_float() * c
    if f.max_abs_coeff() < 1e-6:
        return
    tf = apply_T(SobolevElement(f, B2)).body
    lhs = inner_product(tf, f, SobolevPhi(2))
    rhs = inner_product(f, f, SobolevPhi(2))
    assert lhs >= rhs * (1 - 1e-9)
