"""The three second-order differential expressions and their divergence forms.

``LHat``      (x^2-1) y'' + 2a(1-bx)/(b-x) ((x-c) y' - y)
``LZeroBeta`` (x^2-1) y'' + (beta x - beta - 2) y' - beta y
``MMinus2``   (x^2-1) y'' + (beta x - beta - 2) y' + y

Each can be written as ``(1/w)(-(p y')' + q y)``; :func:`symmetric_coefficients`
returns the float callables (p, p', q, w).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import numpy as np

from ..errors import DomainError, PoleAt
from ..families import Family, ParameterSet, X1Family
from ..functions import as_smooth
from ..polynomial import Polynomial, RationalFunction, is_exact

POLE_GUARD = 1e-12
RESIDUAL_GRID = 200


@dataclass(frozen=True)
class LHat:
    params: ParameterSet

    @property
    def name(self) -> str:
        return "lhat"


@dataclass(frozen=True)
class LZeroBeta:
    beta: Union[Fraction, float]

    @property
    def name(self) -> str:
        return "l0beta"


@dataclass(frozen=True)
class MMinus2:
    beta: Union[Fraction, float]

    @property
    def name(self) -> str:
        return "m-2beta"


Expression = Union[LHat, LZeroBeta, MMinus2]


def _num(v):
    return v if is_exact(v) else float(v)


def apply_expression(expr: Expression, f: Polynomial) -> RationalFunction:
    """Apply ``expr`` to a polynomial with formal differentiation.

    For ``LHat`` the result has denominator ``b - x``; the other expressions
    return a polynomial numerator over 1.
    """
    d1, d2 = f.deriv(), f.deriv(2)
    quad = Polynomial([-1, 0, 1])  # x^2 - 1
    if isinstance(expr, LHat):
        p = expr.params
        if p.c is None:
            raise DomainError("the X1 expression needs c, undefined for beta = 0")
        b_minus_x = Polynomial([p.b, -1])
        one_minus_bx = Polynomial([1, -p.b])
        x_minus_c = Polynomial([-p.c, 1])
        num = b_minus_x * quad * d2 + one_minus_bx * (x_minus_c * d1 - f) * (2 * p.a)
        return RationalFunction(num, b_minus_x)
    be = _num(expr.beta)
    first = Polynomial([-be - 2, be]) * d1
    zeroth = f * (1 if isinstance(expr, MMinus2) else -be)
    return RationalFunction(quad * d2 + first + zeroth)


def apply_expression_poly(expr: Expression, f: Polynomial) -> Polynomial:
    """Like :func:`apply_expression` for the expressions with polynomial output."""
    if isinstance(expr, LHat):
        raise TypeError("the X1 expression returns a rational function")
    return apply_expression(expr, f).numerator


def apply_pointwise(expr: Expression, f, x) -> np.ndarray:
    """Apply ``expr`` to a Polynomial or Smooth at float points."""
    x = np.asarray(x, dtype=float)
    s = as_smooth(f)
    y, y1, y2 = s(x), s.derivative(1)(x), s.derivative(2)(x)
    if isinstance(expr, LHat):
        p = expr.params
        a, b, c = float(p.a), float(p.b), float(p.c)
        return (x * x - 1) * y2 + 2 * a * (1 - b * x) / (b - x) * ((x - c) * y1 - y)
    be = float(expr.beta)
    zeroth = y if isinstance(expr, MMinus2) else -be * y
    return (x * x - 1) * y2 + (be * x - be - 2) * y1 + zeroth


# --------------------------------------------------------------------------
# divergence (Lagrangian symmetric) form
# --------------------------------------------------------------------------

Fn = Callable[[np.ndarray], np.ndarray]


def symmetric_coefficients(expr: Expression) -> tuple[Fn, Fn, Fn, Fn]:
    """(p, p', q, w) with ``expr[y] = (-(p y')' + q y) / w``."""
    if isinstance(expr, LHat):
        pr = expr.params
        al, be, a, b = float(pr.alpha), float(pr.beta), float(pr.a), float(pr.b)

        def w(x):
            return (1 - x) ** al * (1 + x) ** be / (x - b) ** 2

        def p(x):
            return (1 - x) ** (al + 1) * (1 + x) ** (be + 1) / (x - b) ** 2

        def dp(x):
            return p(x) * (-(al + 1) / (1 - x) + (be + 1) / (1 + x) - 2 / (x - b))

        def q(x):
            return -2 * a * (b * x - 1) * (1 - x) ** al * (1 + x) ** be / (x - b) ** 3

        return p, dp, q, w
    be = float(expr.beta)
    shift = 1.0 if isinstance(expr, MMinus2) else -be

    def w(x):
        return (1 - x) ** -2.0 * (1 + x) ** be

    def p(x):
        return (1 - x) ** -1.0 * (1 + x) ** (be + 1)

    def dp(x):
        return p(x) * (1 / (1 - x) + (be + 1) / (1 + x))

    def q(x):
        return shift * w(x)

    return p, dp, q, w


def apply_symmetric_form(expr: Expression | ParameterSet, f, x) -> np.ndarray:
    """Evaluate ``(-(p f')' + q f) / w`` at interior points.

    Raises
    ------
    PoleAt
        ``x`` within 1e-12 of the pole ``b`` of the X1 coefficients.
    """
    if isinstance(expr, ParameterSet):
        expr = LHat(expr)
    x = np.asarray(x, dtype=float)
    if isinstance(expr, LHat):
        b = float(expr.params.b)
        near = np.abs(x - b) < POLE_GUARD
        if np.any(near):
            raise PoleAt(float(np.atleast_1d(x)[np.argmax(np.atleast_1d(near))]))
    p, dp, q, w = symmetric_coefficients(expr)
    s = as_smooth(f)
    return (-(p(x) * s.derivative(2)(x) + dp(x) * s.derivative(1)(x)) + q(x) * s(x)) / w(x)


# --------------------------------------------------------------------------
# eigen-residuals
# --------------------------------------------------------------------------

def expression_for(family: Family) -> Expression:
    if isinstance(family, X1Family):
        return LHat(family.params)
    return MMinus2(family.beta)


def eigen_residual(expr: Expression, family: Family, n: int) -> float:
    """Size of ``expr[P_n] - lambda_n P_n``.

    Exact members give 0 exactly when the identity holds (for ``LHat`` after
    clearing the denominator b - x).  Float members give the max of the
    residual on a 200-point grid divided by max |P_n| on that grid.
    """
    member = family.member(n)
    lam = family.eigenvalue(n)
    applied = apply_expression(expr, member)
    if member.exact:
        cleared = applied.numerator - applied.denominator * member * lam
        if cleared.is_zero():
            return 0.0
        return cleared.max_abs_coeff() / max(member.max_abs_coeff(), 1e-300)
    x = np.linspace(-1.0, 1.0, RESIDUAL_GRID)
    vals = member(x)
    res = applied(x) - float(lam) * vals
    return float(np.max(np.abs(res)) / np.max(np.abs(vals)))
