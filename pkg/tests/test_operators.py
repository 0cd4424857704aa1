import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xjacobi.errors import InconclusiveNearThreshold, PoleAt, UnboundedK
from xjacobi.families import (
    NonClassicalFamily,
    X1Family,
    nonclassical_jacobi,
    validate_parameters,
    x1_jacobi,
)
from xjacobi.functions import Smooth
from xjacobi.operators import (
    EndpointClass,
    LHat,
    LZeroBeta,
    MMinus2,
    PhiForm,
    THat,
    TMinus2,
    WHatForm,
    WMinus2Form,
    apply_expression,
    apply_expression_poly,
    apply_pointwise,
    apply_symmetric_form,
    boundary_difference,
    boundary_form,
    boundary_limit,
    chel_bound,
    chel_constant,
    check_domain_membership,
    classify_endpoints,
    deficiency_index,
    dirichlet_residual,
    eigen_residual,
    endpoint_limit,
    glazman_cubic,
    glazman_function,
    glazman_gtilde,
    greens_residual,
    operator_matrix,
    random_probes,
    rayleigh_quotient,
    verify_frobenius_numeric,
)
from xjacobi.operators.chel import properties_at_plus_one_instance
from xjacobi.polynomial import Polynomial

F = Fraction
P13 = validate_parameters(1, 3)


# expressions ----------------------------------------------------------------

def test_m_on_nonclassical_members_is_exact():
    for beta in (F(2), F(1, 2)):
        for n in range(0, 11):
            p = nonclassical_jacobi(n, beta)
            lam = n * n + (beta - 1) * n + 1
            assert apply_expression_poly(MMinus2(beta), p) == p * lam


@pytest.mark.parametrize("be", [0.25, 0.5, 0.75])
def test_m_on_glazman_companion_function(be):
    # symbolic differentiation gives m[f] = (3 - beta) f for f = (1-x)^2 (1+x)^-beta
    f = Smooth(lambda x: (1 - x) ** 2 * (1 + x) ** -be,
               lambda x: -2 * (1 - x) * (1 + x) ** -be - be * (1 - x) ** 2 * (1 + x) ** (-be - 1),
               lambda x: (2 * (1 + x) ** -be + 4 * be * (1 - x) * (1 + x) ** (-be - 1)
                          + be * (be + 1) * (1 - x) ** 2 * (1 + x) ** (-be - 2)))
    x = np.linspace(-0.9, 0.9, 13)
    np.testing.assert_allclose(apply_pointwise(MMinus2(be), f, x), (3 - be) * f(x), rtol=1e-12)


def test_lhat_of_constant_is_not_constant():
    r = apply_expression(LHat(P13), Polynomial([F(1)]))
    a, b = P13.a, P13.b
    for x in (F(0), F(1, 2), F(-1, 3)):
        assert r(x) == -2 * a * (1 - b * x) / (b - x)
    assert r(F(0)) != r(F(1, 2))


def test_symmetric_form_matches_direct_form():
    x = np.array([-0.7, -0.2, 0.3, 0.8])
    p2 = x1_jacobi(2, P13)
    np.testing.assert_allclose(apply_symmetric_form(LHat(P13), p2, x), 6 * p2.to_float()(x), rtol=1e-10)
    p3 = nonclassical_jacobi(3, 2)
    np.testing.assert_allclose(apply_symmetric_form(MMinus2(2), p3, x), 13 * p3.to_float()(x), rtol=1e-10)
    one = Polynomial([1])
    np.testing.assert_allclose(apply_symmetric_form(MMinus2(2), one, x), np.ones_like(x), rtol=1e-12)


def test_symmetric_form_pole_inside_interval():
    p = validate_parameters(F(-1, 2), F(-1, 4))
    assert -1 < p.b < 1 or abs(p.b) > 1
    bad = validate_parameters(3, 1)
    with pytest.raises(PoleAt):
        apply_symmetric_form(LHat(bad), Polynomial([1, 1]), np.array([float(bad.b)]))


def test_l_zero_beta_differs_by_constant_term():
    f = Polynomial([F(1), F(2), F(3)])
    diff = apply_expression_poly(LZeroBeta(2), f) - apply_expression_poly(MMinus2(2), f)
    assert diff == f * F(-3)


def test_eigen_residual_exact_and_float():
    fam = X1Family(P13)
    assert all(eigen_residual(LHat(P13), fam, n) == 0 for n in range(1, 11))
    nc = NonClassicalFamily(F(2))
    assert all(eigen_residual(MMinus2(2), nc, n) == 0 for n in range(0, 11))
    pf = validate_parameters(1.0, 3.0)
    assert max(eigen_residual(LHat(pf), X1Family(pf), n) for n in range(1, 11)) <= 1e-11
    assert max(eigen_residual(MMinus2(2.0), NonClassicalFamily(2.0), n) for n in range(0, 11)) <= 1e-11


# boundary forms -------------------------------------------------------------

def test_forms_are_antisymmetric():
    f = x1_jacobi(3, P13)
    x = np.array([-0.5, 0.25])
    assert np.all(boundary_form(WHatForm(P13), f, f, x) == 0)
    g = nonclassical_jacobi(4, 2)
    assert np.all(np.abs(boundary_form(PhiForm(2), g, g, x)) == 0)


def test_x1_forms_vanish_at_endpoints():
    f, g = x1_jacobi(2, P13), x1_jacobi(3, P13)
    for e in (1, -1):
        lim = boundary_limit(WHatForm(P13), f, g, e)
        assert lim.converged and abs(lim.value) < 1e-10
        # direct evaluation close to the endpoint
        x = e * (1 - 2.0 ** -30)
        assert abs(boundary_form(WHatForm(P13), f, g, x)) < 1e-6


@pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
def test_glazman_boundary_constant(beta):
    f = Smooth(lambda x: (1 - x) ** 2 * (1 + x) ** -beta,
               lambda x: -2 * (1 - x) * (1 + x) ** -beta - beta * (1 - x) ** 2 * (1 + x) ** (-beta - 1))
    value, up, down = boundary_difference(WMinus2Form(beta), glazman_function(), f)
    assert abs(value - 2 * beta) < 1e-6


def test_glazman_form_with_member_vanishes_at_minus_one():
    lim = boundary_limit(WMinus2Form(0.5), nonclassical_jacobi(2, F(1, 2)), glazman_function(), -1)
    assert lim.converged and abs(lim.value) < 1e-10


def test_glazman_function_shape():
    assert glazman_gtilde(-1.0) == 1 and glazman_gtilde(1.0) == 0
    assert glazman_gtilde(-1.0, 1) == 0 and glazman_gtilde(1.0, 1) == 0
    for knot in (-0.5, 0.0):
        for k in (0, 1, 2):
            left = glazman_gtilde(knot - 1e-9, k)
            right = glazman_gtilde(knot + 1e-9, k)
            assert abs(left - right) < 1e-6


def test_glazman_cubic_is_c1():
    g = glazman_cubic()
    for knot in (-0.5, 0.0):
        assert abs(g(np.array([knot - 1e-9]))[0] - g(np.array([knot + 1e-9]))[0]) < 1e-6


def test_endpoint_limit_detects_divergence():
    from xjacobi.errors import Diverged
    with pytest.raises(Diverged):
        endpoint_limit(lambda x: 1 / (1 - x), 1)
    assert abs(endpoint_limit(lambda x: 3 + (1 - x), 1).value - 3) < 1e-10


# endpoint classification ----------------------------------------------------

@pytest.mark.parametrize("alpha,beta,expected", [
    (2, 3, (0, 0)), (3, 2, (0, 0)), (F(3, 2), 4, (0, 0)),
    (2, F(1, 2), (1, 1)), (F(1, 2), 2, (1, 1)), (3, F(1, 4), (1, 1)),
    (F(1, 4), F(3, 4), (2, 2)), (F(-1, 2), F(-1, 4), (2, 2)), (F(1, 2), F(3, 4), (2, 2)),
])
def test_classification_grid(alpha, beta, expected):
    expr = LHat(validate_parameters(alpha, beta))
    assert deficiency_index(expr) == expected
    for e in (1, -1):
        assert verify_frobenius_numeric(expr, e).agrees


def test_lhat_endpoint_classes():
    up, down = classify_endpoints(LHat(validate_parameters(2, 3)))
    assert up.classification is EndpointClass.LIMIT_POINT is down.classification
    up, down = classify_endpoints(LHat(validate_parameters(F(1, 2), 2)))
    assert up.classification is EndpointClass.LIMIT_CIRCLE


def test_m_endpoint_classes():
    up, down = classify_endpoints(MMinus2(2))
    assert (up.classification, down.classification) == (EndpointClass.LIMIT_POINT,) * 2
    assert up.deficiency == (0, 0)
    up, down = classify_endpoints(MMinus2(F(1, 2)))
    assert up.classification is EndpointClass.LIMIT_POINT
    assert down.classification is EndpointClass.LIMIT_CIRCLE
    assert up.deficiency == (1, 1)
    assert verify_frobenius_numeric(MMinus2(F(1, 2)), 1).agrees


def test_dead_zone_is_inconclusive():
    with pytest.raises(InconclusiveNearThreshold):
        verify_frobenius_numeric(LHat(validate_parameters(1, 3)), 1)


# domain membership ----------------------------------------------------------

def test_x1_eigenfunction_is_member():
    p = validate_parameters(F(1, 4), F(3, 4))
    rep = check_domain_membership(THat(p), x1_jacobi(3, p))
    assert rep.member
    assert all(e.bc_required and e.bc_pass for e in rep.endpoints)


def test_power_singularity_fails_at_plus_one():
    alpha = 0.5
    p = validate_parameters(F(1, 2), F(3, 4))
    f = Smooth(lambda x: (1 - x) ** (-alpha / 2),
               lambda x: alpha / 2 * (1 - x) ** (-alpha / 2 - 1),
               lambda x: alpha / 2 * (alpha / 2 + 1) * (1 - x) ** (-alpha / 2 - 2))
    rep = check_domain_membership(THat(p), f)
    assert not rep.member
    assert not rep.endpoints[0].ok
    assert not rep.regularity_verified


def test_nonclassical_member_in_domain():
    assert check_domain_membership(TMinus2(F(1, 2)), nonclassical_jacobi(4, F(1, 2))).member
    assert not check_domain_membership(TMinus2(F(1, 2)), Polynomial([1])).member


# identities -----------------------------------------------------------------

def test_greens_formula_for_eigenfunctions():
    assert greens_residual(LHat(P13), x1_jacobi(2, P13), x1_jacobi(4, P13)) <= 1e-10
    f = x1_jacobi(3, P13)
    assert greens_residual(LHat(P13), f, f) == pytest.approx(0, abs=1e-12)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=7, max_size=7),
       st.lists(st.integers(-5, 5), min_size=7, max_size=7))
def test_greens_formula_for_random_polynomials(cf, cg):
    f, g = Polynomial([F(c) for c in cf]), Polynomial([F(c) for c in cg])
    assert greens_residual(LHat(P13), f, g) <= 1e-9


def test_dirichlet_formula():
    p2, p3 = nonclassical_jacobi(2, 2), nonclassical_jacobi(3, 2)
    assert dirichlet_residual(2, p2, p2, -0.5, 0.5) <= 1e-10
    assert dirichlet_residual(2, p3, p2, -0.9, 0.9) <= 1e-9
    assert dirichlet_residual(2, p3, Polynomial(), -0.9, 0.9) == 0


def test_rayleigh_quotients():
    assert rayleigh_quotient(TMinus2(2), nonclassical_jacobi(2, 2)) == pytest.approx(7, rel=1e-12)
    assert rayleigh_quotient(TMinus2(2), nonclassical_jacobi(3, 2)) == pytest.approx(13, rel=1e-12)
    f = nonclassical_jacobi(2, 2) + nonclassical_jacobi(6, 2) * F(1, 3)
    q = rayleigh_quotient(TMinus2(2), f)
    assert 7 <= q <= 43 and q >= 1


def test_operator_matrices():
    m = operator_matrix(THat(P13), X1Family(P13), range(1, 9))
    np.testing.assert_allclose(np.diag(m), [0, 6, 14, 24, 36, 50, 66, 84], atol=1e-9)
    assert np.max(np.abs(m - np.diag(np.diag(m)))) <= 1e-9
    m = operator_matrix(TMinus2(2), NonClassicalFamily(F(2)), range(2, 7))
    np.testing.assert_allclose(np.diag(m), [7, 13, 21, 31, 43], rtol=1e-12)


# CHEL -----------------------------------------------------------------------

def test_chel_constant_weights():
    one = lambda x: np.ones_like(np.asarray(x, dtype=float))
    K, where = chel_constant(one, one, one, (0.0, 1.0))
    assert abs(K - 0.5) <= 1e-10
    assert abs(where - 0.5) < 1e-5


def test_chel_instance_is_certified():
    phi, psi, omega, interval = properties_at_plus_one_instance(0.5)
    for probe in random_probes(5, seed=1):
        res = chel_bound(phi, psi, omega, interval, probe)
        assert math.isfinite(res.K) and res.certified


def test_chel_zero_probe():
    phi, psi, omega, interval = properties_at_plus_one_instance(0.5)
    res = chel_bound(phi, psi, omega, interval, lambda x: np.zeros_like(x))
    assert res.ratio_A == 0 and res.ratio_B == 0


def test_chel_unbounded():
    one = lambda x: np.ones_like(np.asarray(x, dtype=float))
    with pytest.raises(UnboundedK):
        chel_constant(lambda x: 1 / np.sqrt(x), one, one, (0.0, 1.0))
