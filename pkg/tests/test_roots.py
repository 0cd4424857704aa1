from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xjacobi.families import validate_parameters
from xjacobi.polynomial import Polynomial
from xjacobi.roots import asymptotic_distances, companion_matrix, find_roots, relative_residual, x1_root_report

P13 = validate_parameters(1, 3)


def test_companion_of_quadratic():
    m = companion_matrix(Polynomial([2, -3, 1]))
    np.testing.assert_allclose(np.sort(np.linalg.eigvals(m).real), [1, 2])


def test_find_roots_exact_residual():
    p = Polynomial([Fraction(-2), 0, 1])
    roots = find_roots(p)
    np.testing.assert_allclose([z.real for z in roots], [-2 ** 0.5, 2 ** 0.5], rtol=1e-15)
    assert all(relative_residual(p, z) <= 1e-12 for z in roots)


def test_complex_roots():
    roots = find_roots(Polynomial([1, 0, 1]))
    assert sorted(round(z.imag) for z in roots) == [-1, 1]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-0.99, 0.99), min_size=1, max_size=8, unique=True))
def test_recovers_distinct_real_roots(rs):
    rs = sorted(rs)
    if min(np.diff(rs), default=1) < 1e-2:
        return
    p = Polynomial([1])
    for r in rs:
        p = p * Polynomial([-r, 1])
    found = find_roots(p)
    np.testing.assert_allclose(sorted(z.real for z in found), rs, atol=1e-9)


def test_degree_six_root_counts():
    rep = x1_root_report(6, P13)
    assert len(rep.interior) == 5 and len(rep.outside) == 1
    assert rep.simple_interior


@pytest.mark.parametrize("n", range(1, 21))
def test_root_counts_up_to_twenty(n):
    rep = x1_root_report(n, P13)
    assert len(rep.interior) == n - 1
    assert len(rep.outside) == 1


def test_exceptional_root_approaches_b():
    dist = [d for _, d in asymptotic_distances(P13, range(4, 21))]
    assert all(b < a for a, b in zip(dist, dist[1:]))
    assert dist[-1] < 0.1


def test_report_is_json_ready():
    import json
    json.dumps(x1_root_report(4, P13).to_json())


def test_distance_ratio_matches_high_precision_roots():
    # 50-digit mpmath polyroots on the independently expanded recursion
    dist = dict(asymptotic_distances(P13, [4, 20]))
    assert abs(dist[4] - 0.357051029396170267) < 1e-12
    assert abs(dist[20] - 0.0828531182603709288) < 1e-12
