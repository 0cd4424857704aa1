"""Weighted inner products, Gram matrices and projection residuals.

Weights with a negative power of (1 - x) are never sampled.  Each such factor
is absorbed into the functions: for instance

    int f g (1-x)^-2 (1+x)^b dx = int [f/(1-x)^2] [g/(1-x)^2] (1-x)^2 (1+x)^b dx,

which is a Gauss-Jacobi integral with exponents (2, b) whenever f and g have
a double root at x = 1.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from ..errors import BetaZero, SingularIntegrand
from ..families import Family, ParameterSet
from ..functions import Smooth, as_smooth
from ..polynomial import Polynomial, RationalFunction
from .rules import gauss_jacobi_rule

DEFAULT_CALLABLE_COUNT = 80
MAX_COUNT = 600
FLOAT_VANISH_TOL = 1e-10


@dataclass(frozen=True)
class ClassicalWeight:
    alpha: float
    beta: float
    count: int | None = None


@dataclass(frozen=True)
class WHat:
    """(1-x)^alpha (1+x)^beta / (x-b)^2."""

    params: ParameterSet
    count: int | None = None


@dataclass(frozen=True)
class WMinus2:
    """(1-x)^-2 (1+x)^beta."""

    beta: float
    count: int | None = None


@dataclass(frozen=True)
class SobolevPhi:
    """Point evaluations at x = 1 plus int f'' g'' (1+x)^(beta+2)."""

    beta: float
    count: int | None = None


@dataclass(frozen=True)
class LeftDef1:
    """int (1-t)^-1 (1+t)^(beta+1) f'g' + (1-t)^-2 (1+t)^beta f g."""

    beta: float
    count: int | None = None


@dataclass(frozen=True)
class LeftDef2:
    """int (1+t)^(beta+2) f''g'' + (beta+2)(1-t)^-1 (1+t)^(beta+1) f'g' + (1-t)^-2 (1+t)^beta f g."""

    beta: float
    count: int | None = None


InnerProductSpec = Union[ClassicalWeight, WHat, WMinus2, SobolevPhi, LeftDef1, LeftDef2]
FunctionLike = Union[Polynomial, Smooth]


# --------------------------------------------------------------------------
# endpoint traces
# --------------------------------------------------------------------------

def _one_sided_d1(fn, h: float) -> float:
    x = 1.0 - h * np.arange(5)
    v = fn(x)
    return float((25 * v[0] - 48 * v[1] + 36 * v[2] - 16 * v[3] + 3 * v[4]) / (12 * h))


def traces(f: FunctionLike) -> tuple[float, float]:
    """(f(1), f'(1)), exact for polynomials.

    Callables without an explicit derivative use one-sided fourth-order
    differences at h = 1e-3, 5e-4, 2.5e-4 combined by Richardson extrapolation.
    """
    if isinstance(f, Polynomial):
        one = Fraction(1) if f.exact else 1.0
        return float(f(one)), float(f.deriv()(one))
    s = as_smooth(f)
    v = float(s(np.array([1.0]))[0])
    if s.has_derivative(1):
        return v, float(s.derivative(1)(np.array([1.0]))[0])
    d = [_one_sided_d1(s, h) for h in (1e-3, 5e-4, 2.5e-4)]
    r1 = [(16 * d[1] - d[0]) / 15, (16 * d[2] - d[1]) / 15]
    return v, (32 * r1[1] - r1[0]) / 31


# --------------------------------------------------------------------------
# regularising transforms
# --------------------------------------------------------------------------

def _degree(f) -> int | None:
    if isinstance(f, (Polynomial, RationalFunction)):
        return f.degree
    return None


def _quotient_values(f: FunctionLike, k: int, order: int, x: np.ndarray) -> np.ndarray:
    """Values of f^(k) / (1-x)^order at interior nodes.

    Polynomials are divided exactly and rejected with SingularIntegrand when
    the root at x = 1 is too shallow.
    """
    if isinstance(f, RationalFunction):
        f = f.as_polynomial()
    if isinstance(f, Polynomial):
        p = f.deriv(k)
        if p.is_zero():
            return np.zeros_like(x)
        tol = 0 if p.exact else FLOAT_VANISH_TOL
        try:
            q = p.divide_by_root_power(1, order, tol)
        except SingularIntegrand:
            raise SingularIntegrand(
                f"derivative {k} must vanish to order {order} at x = 1 for a finite integral"
            ) from None
        # (x - 1)^order versus (1 - x)^order
        return q.to_float()(x) * (-1) ** order
    return as_smooth(f).derivative(k)(x) / (1.0 - x) ** order


def _count(spec, f, g, extra: int = 0) -> int:
    if spec.count is not None:
        return spec.count
    df, dg = _degree(f), _degree(g)
    if df is None or dg is None:
        return DEFAULT_CALLABLE_COUNT + extra
    return min(max(df + dg, 20) + 10 + extra, MAX_COUNT)


def pole_padding(b: float, digits: float = 18.0) -> int:
    """Extra nodes so that the (x-b)^-2 factor is resolved to ``digits`` digits.

    The Gauss error for a function analytic inside the Bernstein ellipse with
    parameter rho = |b| + sqrt(b^2 - 1) decays like rho^(-2n).
    """
    b = abs(float(b))
    rho = b + math.sqrt(b * b - 1.0)
    return int(math.ceil(digits * math.log(10.0) / (2.0 * math.log(rho))))


def _values(f, x, k=0):
    if isinstance(f, RationalFunction):
        if k:
            raise TypeError("derivatives of rational functions are not supported")
        return f.numerator.to_float()(x) / f.denominator.to_float()(x)
    if isinstance(f, Polynomial):
        return f.deriv(k).to_float()(x)
    return as_smooth(f).derivative(k)(x)


def _require_nonzero_beta(beta) -> None:
    if beta == 0:
        raise BetaZero("the Sobolev inner product needs beta != 0 (it contains 2/beta)")


def _w_minus2_part(f, g, beta, count) -> float:
    rule = gauss_jacobi_rule(count, 2.0, float(beta))
    x = rule.nodes
    return rule.integrate(_quotient_values(f, 0, 2, x) * _quotient_values(g, 0, 2, x))


def _first_order_part(f, g, beta, count) -> float:
    rule = gauss_jacobi_rule(count, 1.0, float(beta) + 1.0)
    x = rule.nodes
    return rule.integrate(_quotient_values(f, 1, 1, x) * _quotient_values(g, 1, 1, x))


def _second_order_part(f, g, beta, count) -> float:
    rule = gauss_jacobi_rule(count, 0.0, float(beta) + 2.0)
    x = rule.nodes
    return rule.integrate(_values(f, x, 2) * _values(g, x, 2))


def inner_product(f: FunctionLike, g: FunctionLike, spec: InnerProductSpec) -> float:
    """Real inner product of ``f`` and ``g`` for the weight described by ``spec``.

    Raises
    ------
    SingularIntegrand
        A polynomial lacks the root at x = 1 the weight requires.
    BetaZero
        Sobolev inner product with beta = 0.
    """
    if isinstance(spec, ClassicalWeight):
        rule = gauss_jacobi_rule(_count(spec, f, g), float(spec.alpha), float(spec.beta))
        return rule.integrate(_values(f, rule.nodes) * _values(g, rule.nodes))
    if isinstance(spec, WHat):
        p = spec.params
        n = _count(spec, f, g, 0 if spec.count else pole_padding(p.b))
        rule = gauss_jacobi_rule(min(n, MAX_COUNT), float(p.alpha), float(p.beta))
        x = rule.nodes
        return rule.integrate(_values(f, x) * _values(g, x) / (x - float(p.b)) ** 2)
    if isinstance(spec, WMinus2):
        return _w_minus2_part(f, g, spec.beta, _count(spec, f, g))
    if isinstance(spec, SobolevPhi):
        _require_nonzero_beta(spec.beta)
        be = float(spec.beta)
        f0, f1 = traces(f)
        g0, g1 = traces(g)
        point = f0 * g0 + (2 / be) * (f1 * g0 + f0 * g1) + (1 + 4 / be ** 2) * f1 * g1
        return point + _second_order_part(f, g, be, _count(spec, f, g))
    if isinstance(spec, LeftDef1):
        n = _count(spec, f, g)
        return _first_order_part(f, g, spec.beta, n) + _w_minus2_part(f, g, spec.beta, n)
    if isinstance(spec, LeftDef2):
        n = _count(spec, f, g)
        be = float(spec.beta)
        return (_second_order_part(f, g, be, n)
                + (be + 2) * _first_order_part(f, g, be, n)
                + _w_minus2_part(f, g, be, n))
    raise TypeError(f"unknown inner product spec {spec!r}")


def phi_factorized(f: FunctionLike, g: FunctionLike, beta: float, count: int | None = None) -> float:
    """The Sobolev inner product written as a sum of products of combined traces."""
    _require_nonzero_beta(beta)
    be = float(beta)
    f0, f1 = traces(f)
    g0, g1 = traces(g)
    n = _count(SobolevPhi(beta, count), f, g)
    return ((f0 + (2 / be) * f1) * (g0 + (2 / be) * g1) + f1 * g1
            + _second_order_part(f, g, be, n))


def norm(f: FunctionLike, spec: InnerProductSpec) -> float:
    return math.sqrt(inner_product(f, f, spec))


# --------------------------------------------------------------------------
# Gram matrices and projections
# --------------------------------------------------------------------------

def gram_matrix(family: Family, n_min: int, n_max: int, spec: InnerProductSpec) -> np.ndarray:
    """Symmetric matrix of inner products of family members n_min..n_max."""
    members = [family.member(n) for n in range(n_min, n_max + 1)]
    size = len(members)
    out = np.empty((size, size))
    for i in range(size):
        for j in range(i, size):
            out[i, j] = out[j, i] = inner_product(members[i], members[j], spec)
    return out


def max_relative_offdiag(gram: np.ndarray) -> float:
    """max |G_ij| / sqrt(G_ii G_jj) over i != j."""
    d = np.sqrt(np.abs(np.diag(gram)))
    scaled = gram / np.outer(d, d)
    np.fill_diagonal(scaled, 0.0)
    return float(np.max(np.abs(scaled))) if len(gram) > 1 else 0.0


def gram_to_csv(gram: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in gram:
        writer.writerow([f"{v:.17g}" for v in row])
    return buf.getvalue()


def gram_to_json(gram: np.ndarray, n_min: int) -> dict:
    return {"n_min": n_min, "n_max": n_min + len(gram) - 1,
            "matrix": [[float(v) for v in row] for row in gram]}


def completeness_residual(f: FunctionLike, family: Family, spec: InnerProductSpec,
                          n_max: int, n_min: int | None = None) -> list[float]:
    """Norms of f minus its orthogonal projection onto members n_min..N, N = n_min..n_max.

    The residual is recomputed directly for every N instead of through
    Bessel's identity, so it does not stall at the square root of machine
    precision.
    """
    if n_min is None:
        n_min = family.n_min
    fs = as_smooth(f)
    residual = fs
    out = []
    for n in range(n_min, n_max + 1):
        p = family.member(n)
        c = inner_product(f, p, spec) / inner_product(p, p, spec)
        residual = residual - Smooth.from_polynomial(p) * c
        out.append(math.sqrt(max(inner_product(residual, residual, spec), 0.0)))
    return out
