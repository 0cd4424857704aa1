"""Dense univariate polynomials over exact rationals or binary64 floats.

Coefficients are stored in ascending order of degree.  A polynomial whose
coefficients are all :class:`fractions.Fraction` is *exact*; every ring
operation keeps it exact.  Mixing in a float coefficient demotes the result
to float arithmetic.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import OverflowInExact, SingularIntegrand

Scalar = Union[Fraction, float, int]


def as_scalar(c) -> Fraction | float:
    """Promote ints and rationals to Fraction, leave floats alone."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (bool, np.bool_)):
        raise TypeError("booleans are not polynomial coefficients")
    if isinstance(c, (int, np.integer, Rational)):
        return Fraction(int(c)) if isinstance(c, (int, np.integer)) else Fraction(c)
    return float(c)


def is_exact(c) -> bool:
    return isinstance(c, (Fraction, int, np.integer)) and not isinstance(c, bool)


def scalar_str(c) -> str:
    """Render a coefficient the way the JSON schema expects ("p/q" when exact)."""
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return repr(float(c))


class Polynomial:
    """Immutable dense polynomial ``c0 + c1 x + ... + cn x^n``."""

    __slots__ = ("coeffs", "_fcoeffs")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if isinstance(c, float) and not math.isfinite(c):
                raise OverflowInExact(f"non-finite coefficient {c!r}")
        self.coeffs: tuple = tuple(cs)
        self._fcoeffs = None

    # construction helpers ------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls([c])

    @classmethod
    def identity(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def linear(cls, c0: Scalar, c1: Scalar) -> "Polynomial":
        return cls([c0, c1])

    @classmethod
    def one_minus_x_power(cls, k: int) -> "Polynomial":
        return cls([1, -1]) ** k

    # basic properties ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def to_float(self) -> "Polynomial":
        return Polynomial([float(c) for c in self.coeffs])

    def float_coeffs(self) -> np.ndarray:
        if self._fcoeffs is None:
            self._fcoeffs = np.array([float(c) for c in self.coeffs], dtype=float)
        return self._fcoeffs

    def max_abs_coeff(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)

    # evaluation ----------------------------------------------------------
    def __call__(self, x):
        if isinstance(x, (np.ndarray, float, complex, np.floating, np.complexfloating)):
            return self._horner_float(x)
        if self.exact and is_exact(x):
            acc = Fraction(0)
        else:
            acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _horner_float(self, x):
        cs = self.float_coeffs()
        acc = np.zeros_like(x, dtype=np.result_type(x, float)) if isinstance(x, np.ndarray) else 0.0 * x
        for c in cs[::-1]:
            acc = acc * x + c
        return acc

    # ring operations -----------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            s = as_scalar(other)
            return Polynomial(c * s for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        s = as_scalar(other)
        if isinstance(s, Fraction):
            return Polynomial(c / s for c in self.coeffs)
        return Polynomial(c / s for c in self.coeffs)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = Polynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, float, Fraction)):
                other = Polynomial([other])
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(scalar_str(c) for c in self.coeffs)}])"

    # calculus ------------------------------------------------------------
    def deriv(self, k: int = 1) -> "Polynomial":
        p = self
        for _ in range(k):
            p = Polynomial(c * i for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def compose_linear(self, c0: Scalar, c1: Scalar) -> "Polynomial":
        """Return ``t -> p(c0 + c1 t)`` (Taylor shift plus scaling)."""
        lin = Polynomial([c0, c1])
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def order_at(self, x0: Scalar, tol: float | None = None) -> int:
        """Multiplicity of ``x0`` as a root.

        Exact polynomials are tested for exact vanishing of Taylor coefficients;
        float polynomials use ``|c_k| <= tol * ||p||`` (``tol`` defaults to 1e-10).
        """
        if self.is_zero():
            return math.inf  # type: ignore[return-value]
        shifted = self.compose_linear(x0, 1)
        scale = self.max_abs_coeff()
        if tol is None:
            tol = 0.0 if (self.exact and is_exact(x0)) else 1e-10
        k = 0
        for c in shifted.coeffs:
            vanishes = (c == 0) if tol == 0 else abs(float(c)) <= tol * scale
            if not vanishes:
                break
            k += 1
        return k

    def divide_by_root_power(self, x0: Scalar, k: int, tol: float | None = None) -> "Polynomial":
        """Exact quotient of ``p`` by ``(x - x0)**k``.

        Raises :class:`SingularIntegrand` when ``x0`` is not a root of order ``>= k``.
        """
        if self.is_zero():
            return Polynomial()
        if self.order_at(x0, tol) < k:
            raise SingularIntegrand(
                f"polynomial does not vanish to order {k} at x = {x0}"
            )
        q = list(self.coeffs)
        for _ in range(k):
            # synthetic division by (x - x0); remainder is dropped (verified ~0 above)
            out = [Fraction(0)] * (len(q) - 1)
            acc = 0 * x0
            for i in range(len(q) - 1, 0, -1):
                acc = acc * x0 + q[i]
                out[i - 1] = acc
            q = out
        return Polynomial(q)

    # serialization -------------------------------------------------------
    def coeff_strings(self) -> list[str]:
        return [scalar_str(c) for c in self.coeffs] or ["0"]

    def json_coeffs(self) -> list:
        if self.exact:
            return self.coeff_strings()
        return [float(c) for c in self.coeffs] or [0.0]


class RationalFunction:
    """Quotient ``numerator / denominator`` of two polynomials."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Polynomial, denominator: Polynomial | None = None):
        if denominator is None:
            denominator = Polynomial([1])
        if denominator.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        self.numerator = numerator
        self.denominator = denominator

    def __call__(self, x):
        return self.numerator(x) / self.denominator(x)

    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError("denominator is not constant")
        return self.numerator / self.denominator.coeffs[0]

    def __sub__(self, other: "RationalFunction | Polynomial") -> "RationalFunction":
        if isinstance(other, Polynomial):
            other = RationalFunction(other)
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator - other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator - other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    @property
    def degree(self) -> int:
        return self.numerator.degree

    def __repr__(self):
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"


def polyval(coeffs: Sequence[float], x):
    """Horner evaluation of a plain coefficient sequence (ascending)."""
    return Polynomial(coeffs)(x)
