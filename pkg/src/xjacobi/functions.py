"""Smooth callables carrying their derivatives.

Non-polynomial inputs to inner products and boundary forms are wrapped in
:class:`Smooth`.  Missing derivatives fall back to fourth-order central
differences, which is adequate for test functions but never used on
polynomials (those are differentiated formally).
"""
from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from .polynomial import Polynomial

Fn = Callable[[np.ndarray], np.ndarray]

_FD_STEP = 1e-3


def _central_derivative(fn: Fn, h: float = _FD_STEP) -> Fn:
    def d(x):
        x = np.asarray(x, dtype=float)
        return (fn(x - 2 * h) - 8 * fn(x - h) + 8 * fn(x + h) - fn(x + 2 * h)) / (12 * h)

    return d


class Smooth:
    """A function with up to three known derivatives.

    Parameters
    ----------
    f : callable
        Vectorised function of a float array.
    df, d2f, d3f : callable, optional
        Derivatives.  Whatever is missing is approximated by central
        differences of the next lower derivative.
    """

    __slots__ = ("_derivs", "regularity_verified")

    def __init__(self, f: Fn, df: Optional[Fn] = None, d2f: Optional[Fn] = None,
                 d3f: Optional[Fn] = None, *, regularity_verified: bool = False):
        self._derivs = [f, df, d2f, d3f]
        self.regularity_verified = regularity_verified

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "Smooth":
        ps = [p.to_float()]
        for _ in range(3):
            ps.append(ps[-1].deriv())
        return cls(*ps, regularity_verified=True)

    @classmethod
    def constant(cls, c: float) -> "Smooth":
        zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        return cls(lambda x: np.full_like(np.asarray(x, dtype=float), c), zero, zero, zero)

    def has_derivative(self, k: int) -> bool:
        return self._derivs[k] is not None

    def derivative(self, k: int = 1) -> Fn:
        if k < 0 or k > 3:
            raise ValueError("only derivatives of order 0..3 are supported")
        d = self._derivs[k]
        if d is None:
            d = _central_derivative(self.derivative(k - 1))
        return d

    def __call__(self, x):
        return self._derivs[0](np.asarray(x, dtype=float))

    # linear combinations ---------------------------------------------------
    def _combine(self, other: "Smooth", a: float, b: float) -> "Smooth":
        ds = []
        for k in range(4):
            fk, gk = self.derivative(k), other.derivative(k)
            ds.append(lambda x, fk=fk, gk=gk: a * fk(x) + b * gk(x))
        return Smooth(*ds, regularity_verified=self.regularity_verified and other.regularity_verified)

    def __add__(self, other):
        return self._combine(as_smooth(other), 1.0, 1.0)

    def __sub__(self, other):
        return self._combine(as_smooth(other), 1.0, -1.0)

    def __mul__(self, c: float):
        c = float(c)
        return Smooth(*[lambda x, d=self.derivative(k): c * d(x) for k in range(4)],
                      regularity_verified=self.regularity_verified)

    __rmul__ = __mul__


def as_smooth(f) -> Smooth:
    """Promote a Polynomial, Smooth or bare callable to :class:`Smooth`."""
    if isinstance(f, Smooth):
        return f
    if isinstance(f, Polynomial):
        return Smooth.from_polynomial(f)
    if callable(f):
        return Smooth(f)
    raise TypeError(f"cannot interpret {type(f).__name__} as a function")


def derivative_fn(f, k: int) -> Fn:
    """k-th derivative of a Polynomial or Smooth as a float callable."""
    if isinstance(f, Polynomial):
        return f.deriv(k).to_float()
    return as_smooth(f).derivative(k)
