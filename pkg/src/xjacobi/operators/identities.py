"""Green's and Dirichlet's identities, Rayleigh quotients and operator matrices."""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from ..families import Family
from ..functions import Smooth, as_smooth
from ..polynomial import Polynomial
from ..quadrature import WHat, WMinus2, inner_product
from .boundary import WHatForm, WMinus2Form, boundary_difference
from .endpoints import Operator, THat, TMinus2
from .expressions import (
    Expression,
    LHat,
    MMinus2,
    apply_expression,
    apply_pointwise,
    symmetric_coefficients,
)

DIRICHLET_NODES = 80


def default_spec(expr: Expression):
    if isinstance(expr, LHat):
        return WHat(expr.params)
    return WMinus2(expr.beta)


def default_form(expr: Expression):
    if isinstance(expr, LHat):
        return WHatForm(expr.params)
    return WMinus2Form(expr.beta)


def _apply(expr: Expression, f):
    if isinstance(f, Polynomial):
        return apply_expression(expr, f)
    return Smooth(lambda x: apply_pointwise(expr, f, x))


def greens_residual(expr: Expression, f, g, spec=None) -> float:
    """Defect of Green's formula on (-1, 1).

    ``|(l[f], g) - (f, l[g]) - ([f, g](1) - [f, g](-1))|``, divided by
    ``max(1, |(l[f], g)|)`` so that it is scale free for large eigenvalues.
    """
    spec = spec or default_spec(expr)
    left = inner_product(_apply(expr, f), g, spec)
    right = inner_product(f, _apply(expr, g), spec)
    jump, _, _ = boundary_difference(default_form(expr), f, g)
    return abs(left - right - jump) / max(1.0, abs(left))


def _legendre_on(a: float, b: float, n: int = DIRICHLET_NODES):
    u, w = np.polynomial.legendre.leggauss(n)
    return a + (u + 1) * (b - a) / 2, w * (b - a) / 2


def dirichlet_residual(beta, f, g, x: float, y: float, variant: bool = False) -> float:
    """Defect of Dirichlet's formula for m_{-2,beta} on [x, y].

    ``int m[f] g w + p f' g |_x^y = int p f' g' + int f g w`` with
    p = (1-t)^-1 (1+t)^(beta+1) and w = (1-t)^-2 (1+t)^beta.  With
    ``variant=True`` the rearranged form on [0, y] is checked instead,
    ``int_0^y p f' g' = -f'(0) g(0) + p f' g (y) + int_0^y (m[f] - f) g w``,
    and ``x`` must be 0.  Returned relative to ``max(1, |lhs|)``.
    """
    if not -1 < x < y < 1:
        raise ValueError("need -1 < x < y < 1")
    expr = MMinus2(beta)
    p, _, _, w = symmetric_coefficients(expr)
    fs, gs = as_smooth(f), as_smooth(g)
    t, wt = _legendre_on(x, y)
    mf = apply_pointwise(expr, fs, t)
    f0, f1 = fs(t), fs.derivative(1)(t)
    g0, g1 = gs(t), gs.derivative(1)(t)
    ends = np.array([x, y])
    pf1g = p(ends) * fs.derivative(1)(ends) * gs(ends)
    if variant:
        if x != 0:
            raise ValueError("the rearranged formula starts at x = 0")
        lhs = float(np.dot(wt, p(t) * f1 * g1))
        rhs = pf1g[1] - pf1g[0] + float(np.dot(wt, (mf - f0) * g0 * w(t)))
    else:
        lhs = float(np.dot(wt, mf * g0 * w(t))) + pf1g[1] - pf1g[0]
        rhs = float(np.dot(wt, p(t) * f1 * g1)) + float(np.dot(wt, f0 * g0 * w(t)))
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def rayleigh_quotient(op: TMinus2, f: Polynomial) -> float:
    """(T f, f) / (f, f) in L^2(w_{-2,beta}).

    Raises SingularIntegrand when f lacks the double root at x = 1.
    """
    spec = WMinus2(op.beta)
    tf = apply_expression(op.expression, f)
    return inner_product(tf, f, spec) / inner_product(f, f, spec)


def operator_matrix(op: Operator, family: Family, n_range: Iterable[int], spec=None) -> np.ndarray:
    """Normalised matrix (l[p_i], p_j) / (||p_i|| ||p_j||) over the given degrees."""
    expr = op.expression
    spec = spec or default_spec(expr)
    ns = list(n_range)
    members = [family.member(n) for n in ns]
    applied = [apply_expression(expr, p) for p in members]
    norms = [math.sqrt(inner_product(p, p, spec)) for p in members]
    size = len(ns)
    out = np.empty((size, size))
    for i in range(size):
        for j in range(size):
            out[i, j] = inner_product(applied[i], members[j], spec) / (norms[i] * norms[j])
    return out


__all__ = [
    "THat", "TMinus2", "default_form", "default_spec", "dirichlet_residual",
    "greens_residual", "operator_matrix", "rayleigh_quotient",
]
