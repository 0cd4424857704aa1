"""Classical Jacobi, exceptional X1-Jacobi and non-classical P_n^(-2,beta) families.

Every constructor works in two arithmetics.  When ``alpha`` and ``beta`` are
``int`` or :class:`~fractions.Fraction` the coefficients are exact rationals;
floats switch the whole computation to binary64.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DegenerateFamily, DomainError, GammaPole, RegimeViolation
from .polynomial import Polynomial, as_scalar, is_exact, scalar_str

DEGREE_CAP = 64

Real = Union[Fraction, float, int]


class Regime(str, enum.Enum):
    EXCEPTIONAL = "exceptional"
    EXTREME_ALPHA_ZERO = "extreme"


class Arithmetic(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def _coerce_pair(alpha, beta, exact: bool | None):
    if exact is None:
        exact = is_exact(alpha) and is_exact(beta)
    if exact:
        if isinstance(alpha, float) or isinstance(beta, float):
            # binary64 values are themselves exact dyadic rationals
            return Fraction(alpha), Fraction(beta), True
        return as_scalar(alpha), as_scalar(beta), True
    return float(alpha), float(beta), False


@dataclass(frozen=True)
class ParameterSet:
    """Validated (alpha, beta) together with the derived constants a, b, c.

    In the extreme regime with ``beta = 0`` the constant ``c`` does not exist
    and is stored as ``None``.
    """

    alpha: Real
    beta: Real
    a: Real
    b: Real
    c: Real | None
    regime: Regime
    arithmetic: Arithmetic

    @property
    def exact(self) -> bool:
        return self.arithmetic is Arithmetic.EXACT

    def as_dict(self) -> dict:
        def r(v):
            if v is None:
                return None
            return scalar_str(v) if isinstance(v, Fraction) else float(v)

        return {
            "alpha": r(self.alpha),
            "beta": r(self.beta),
            "a": r(self.a),
            "b": r(self.b),
            "c": r(self.c),
            "regime": self.regime.value,
            "arithmetic": self.arithmetic.value,
        }


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def validate_parameters(
    alpha: Real,
    beta: Real,
    regime: Regime | str = Regime.EXCEPTIONAL,
    *,
    full_basis: bool = False,
    exact: bool | None = None,
) -> ParameterSet:
    """Check (alpha, beta) against a regime and derive a, b, c.

    Parameters
    ----------
    alpha, beta
        Jacobi parameters.  Exact inputs (int/Fraction) select rational mode.
    regime
        ``"exceptional"`` for the X1 family, ``"extreme"`` for alpha = 0.
    full_basis
        Extreme regime only: refuse beta = 0, where P_1^(-2,beta) drops degree.
    exact
        Force the arithmetic instead of inferring it from the inputs.

    Raises
    ------
    RegimeViolation
        The violated condition is named in the message.
    DegenerateFamily
        ``beta = 0`` combined with ``full_basis=True``.
    """
    regime = Regime(regime)
    alpha, beta, is_ex = _coerce_pair(alpha, beta, exact)
    arith = Arithmetic.EXACT if is_ex else Arithmetic.FLOAT
    if regime is Regime.EXCEPTIONAL:
        if not alpha > -1:
            raise RegimeViolation("alpha > -1 violated")
        if not beta > -1:
            raise RegimeViolation("beta > -1 violated")
        if alpha == beta:
            raise RegimeViolation("alpha != beta violated")
        if alpha == 0 or beta == 0:
            raise RegimeViolation("alpha != 0 and beta != 0 violated")
        if _sign(alpha) != _sign(beta):
            raise RegimeViolation("sgn(alpha) = sgn(beta) violated")
        a = (beta - alpha) / 2
        b = (beta + alpha) / (beta - alpha)
        c = b + 1 / a
        assert abs(b) > 1, "|b| > 1 must follow from the exceptional conditions"
        return ParameterSet(alpha, beta, a, b, c, regime, arith)

    if alpha != 0:
        raise RegimeViolation("alpha = 0 violated (extreme regime)")
    if not beta > -1:
        raise RegimeViolation("beta > -1 violated")
    if beta == 0 and full_basis:
        raise DegenerateFamily("beta != 0 violated: P_1^(-2,beta) has degree 0 when beta = 0")
    a = beta / 2
    b = Fraction(1) if is_ex else 1.0
    c = (beta + 2) / beta if beta != 0 else None
    return ParameterSet(alpha, beta, a, b, c, regime, arith)


# --------------------------------------------------------------------------
# Gamma function helpers
# --------------------------------------------------------------------------

def _is_integral(z) -> bool:
    if isinstance(z, Fraction):
        return z.denominator == 1
    if isinstance(z, int):
        return True
    return float(z).is_integer()


def gamma(z: Real) -> Real:
    """Gamma function with an exact factorial path for positive integers."""
    if _is_integral(z):
        k = int(z)
        if k <= 0:
            raise GammaPole(f"Gamma has a pole at {z}")
        if is_exact(z):
            return Fraction(math.factorial(k - 1))
        return float(math.factorial(k - 1)) if k <= 171 else math.inf
    return math.gamma(float(z))


def gamma_quotient(num: list[Real], den: list[Real]) -> Real:
    """prod Gamma(num) / prod Gamma(den), exact when every argument is an exact integer."""
    for z in list(num) + list(den):
        if _is_integral(z) and int(z) <= 0:
            raise GammaPole(f"Gamma has a pole at {z}")
    if all(is_exact(z) and _is_integral(z) for z in list(num) + list(den)):
        out = Fraction(1)
        for z in num:
            out *= gamma(z)
        for z in den:
            out /= gamma(z)
        return out
    if all(float(z) > 0 for z in list(num) + list(den)):
        log = sum(math.lgamma(float(z)) for z in num) - sum(math.lgamma(float(z)) for z in den)
        return math.exp(log)
    out = 1.0
    for z in num:
        out *= math.gamma(float(z))
    for z in den:
        out /= math.gamma(float(z))
    return out


def _pow2(e: Real) -> Real:
    if is_exact(e) and _is_integral(e):
        return Fraction(2) ** int(e)
    return 2.0 ** float(e)


# --------------------------------------------------------------------------
# Classical Jacobi polynomials
# --------------------------------------------------------------------------

def gen_binomial(z: Real, k: int) -> Real:
    """Generalised binomial coefficient C(z, k) for integer k >= 0."""
    if k < 0:
        return Fraction(0) if is_exact(z) else 0.0
    out = Fraction(1) if is_exact(z) else 1.0
    for i in range(k):
        out = out * (z - i) / (i + 1)
    return out


@lru_cache(maxsize=None)
def _pm_powers(n: int) -> tuple[tuple[Polynomial, ...], tuple[Polynomial, ...]]:
    xm = [Polynomial([1])]
    xp = [Polynomial([1])]
    for _ in range(n):
        xm.append(xm[-1] * Polynomial([-1, 1]))
        xp.append(xp[-1] * Polynomial([1, 1]))
    return tuple(xm), tuple(xp)


def _check_degree(n: int, cap: int) -> None:
    if n > cap:
        raise DomainError(f"degree {n} exceeds the configured cap {cap}")


def classical_jacobi(n: int, alpha: Real, beta: Real, *, exact: bool | None = None,
                     cap: int = DEGREE_CAP) -> Polynomial:
    """P_n^(alpha,beta) from the finite binomial sum, ``n = -1`` giving zero.

    ``2^-n sum_k C(n+alpha, n-k) C(n+beta, k) (x-1)^k (x+1)^(n-k)``
    """
    if n < 0:
        return Polynomial()
    _check_degree(n, cap)
    alpha, beta, ex = _coerce_pair(alpha, beta, exact)
    xm, xp = _pm_powers(n)
    acc = Polynomial()
    for k in range(n + 1):
        w = gen_binomial(n + alpha, n - k) * gen_binomial(n + beta, k)
        acc = acc + (xm[k] * xp[n - k]) * w
    scale = Fraction(1, 2 ** n) if ex else 2.0 ** (-n)
    return acc * scale


# --------------------------------------------------------------------------
# Exceptional X1-Jacobi polynomials
# --------------------------------------------------------------------------

def x1_jacobi(n: int, params: ParameterSet, *, cap: int = DEGREE_CAP) -> Polynomial:
    """Exceptional polynomial of degree n built from two classical neighbours.

    ``-(x-b)/2 * P_{n-1} + (b P_{n-1} - P_{n-2}) / (alpha+beta+2n-2)``.
    Also accepted for the extreme regime (alpha = 0), where the result is a
    multiple of the non-classical P_n^(-2,beta).
    """
    if n < 1:
        raise DomainError("the X1 family has no member of degree < 1")
    _check_degree(n, cap)
    al, be, b = params.alpha, params.beta, params.b
    ex = params.exact
    denom = al + be + 2 * n - 2
    if denom == 0:
        raise DegenerateFamily(f"alpha + beta + 2n - 2 = 0 at n = {n}")
    p1 = classical_jacobi(n - 1, al, be, exact=ex, cap=cap)
    p2 = classical_jacobi(n - 2, al, be, exact=ex, cap=cap)
    half = Fraction(1, 2) if ex else 0.5
    out = Polynomial([b, -1]) * half * p1 + (p1 * b - p2) / denom
    # the first term is -(x - b)/2 = (b - x)/2
    if out.degree != n:
        raise DegenerateFamily(f"X1 polynomial of index {n} has degree {out.degree}")
    return out


def x1_eigenvalue(n: int, params: ParameterSet) -> Real:
    if n < 1:
        raise DomainError("the X1 family has no member of degree < 1")
    return (n - 1) * (params.alpha + params.beta + n)


def x1_norm_squared(n: int, params: ParameterSet) -> Real:
    """Squared weighted norm of the degree-n exceptional polynomial.

    ``2^(a+b+1) (a+n)(b+n) / (4 (a+n-1)(b+n-1)(a+b+2n-1))
    * Gamma(a+n) Gamma(b+n) / (Gamma(n) Gamma(a+b+n))`` with (a, b) = (alpha, beta).
    Exact when alpha and beta are exact integers.
    """
    if n < 1:
        raise DomainError("the X1 family has no member of degree < 1")
    if params.regime is not Regime.EXCEPTIONAL:
        raise RegimeViolation("closed-form X1 norm needs the exceptional regime")
    al, be = params.alpha, params.beta
    front = (al + n) * (be + n) / (4 * (al + n - 1) * (be + n - 1) * (al + be + 2 * n - 1))
    g = gamma_quotient([al + n, be + n], [n, al + be + n])
    out = _pow2(al + be + 1) * front * g
    assert out > 0
    return out


def x1_norm_squared_printed(n: int, params: ParameterSet) -> Real:
    """The variant with ``(alpha+n+1)`` in the denominator.

    Kept for cross-checking: it differs from the true squared norm by the
    factor ``(alpha+n-1)/(alpha+n+1)``.
    """
    al = params.alpha
    return x1_norm_squared(n, params) * (al + n - 1) / (al + n + 1)


# --------------------------------------------------------------------------
# Non-classical Jacobi polynomials P_n^(-2,beta)
# --------------------------------------------------------------------------

def nonclassical_jacobi(n: int, beta: Real, *, exact: bool | None = None,
                        allow_degenerate: bool = False, cap: int = DEGREE_CAP) -> Polynomial:
    """P_n^(-2,beta): 1, beta x - beta - 2, then (1-x)^2 P_{n-2}^(2,beta) rescaled."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    _check_degree(n, cap)
    if not beta > -1:
        raise RegimeViolation("beta > -1 violated")
    if exact is None:
        exact = is_exact(beta)
    be = Fraction(beta) if exact else float(beta)
    if n == 0:
        return Polynomial([Fraction(1) if exact else 1.0])
    if n == 1:
        if be == 0 and not allow_degenerate:
            raise DegenerateFamily("P_1^(-2,0) = -2 has degree 0; beta != 0 required")
        return Polynomial([-be - 2, be])
    const = (n + be) * (n + be - 1) / (4 * n * (n - 1))
    sq = Polynomial([1, -2, 1])
    return sq * classical_jacobi(n - 2, 2, be, exact=exact, cap=cap) * const


def nonclassical_eigenvalue(n: int, beta: Real) -> Real:
    return n * n + (beta - 1) * n + 1


def nonclassical_norm_squared(n: int, beta: Real) -> Real:
    """Squared w_{-2,beta} norm, ``2^(beta-1) Gamma(n-1) Gamma(n+beta+1) / (n! (2n+beta-1) Gamma(n+beta-1))``."""
    if n < 2:
        raise DomainError("P_0 and P_1 are not square integrable against w_{-2,beta}")
    if not beta > -1:
        raise RegimeViolation("beta > -1 violated")
    g = gamma_quotient([n - 1, n + beta + 1], [n + beta - 1])
    out = _pow2(beta - 1) * g / (math.factorial(n) * (2 * n + beta - 1))
    assert out > 0
    return out


# --------------------------------------------------------------------------
# Family identifiers
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassicalFamily:
    alpha: Real
    beta: Real
    exact: bool | None = None
    n_min: int = 0

    def member(self, n: int) -> Polynomial:
        return classical_jacobi(n, self.alpha, self.beta, exact=self.exact)

    def eigenvalue(self, n: int) -> Real:
        # eigenvalue of -(1-x^2) y'' + (alpha - beta + (alpha+beta+2) x) y'
        return n * (n + self.alpha + self.beta + 1)

    @property
    def name(self) -> str:
        return "classical"


@dataclass(frozen=True)
class X1Family:
    params: ParameterSet
    n_min: int = 1

    def member(self, n: int) -> Polynomial:
        return x1_jacobi(n, self.params)

    def eigenvalue(self, n: int) -> Real:
        return x1_eigenvalue(n, self.params)

    def norm_squared(self, n: int) -> Real:
        return x1_norm_squared(n, self.params)

    @property
    def alpha(self):
        return self.params.alpha

    @property
    def beta(self):
        return self.params.beta

    @property
    def name(self) -> str:
        return "x1"


@dataclass(frozen=True)
class NonClassicalFamily:
    beta: Real
    exact: bool | None = None
    n_min: int = 0

    def member(self, n: int) -> Polynomial:
        return nonclassical_jacobi(n, self.beta, exact=self.exact)

    def eigenvalue(self, n: int) -> Real:
        return nonclassical_eigenvalue(n, self.beta)

    def norm_squared(self, n: int) -> Real:
        return nonclassical_norm_squared(n, self.beta)

    @property
    def alpha(self):
        return -2

    @property
    def name(self) -> str:
        return "nonclassical"


Family = Union[ClassicalFamily, X1Family, NonClassicalFamily]


def _json_scalar(v):
    if isinstance(v, Fraction):
        return scalar_str(v)
    return float(v)


def polynomial_record(family: Family, n: int, poly: Polynomial | None = None) -> dict:
    """JSON-ready description of one family member."""
    if poly is None:
        poly = family.member(n)
    return {
        "family": family.name,
        "n": n,
        "alpha": _json_scalar(family.alpha),
        "beta": _json_scalar(family.beta),
        "coeffs": poly.json_coeffs(),
    }
