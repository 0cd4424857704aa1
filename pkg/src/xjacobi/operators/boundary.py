"""Sesquilinear boundary forms, their endpoint limits and the Glazman function."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from ..errors import Diverged
from ..families import ParameterSet
from ..functions import Smooth, as_smooth


@dataclass(frozen=True)
class WHatForm:
    """p (f g' - f' g) with p = (1-x)^(alpha+1) (1+x)^(beta+1) / (x-b)^2."""

    params: ParameterSet

    def coefficient(self, x):
        pr = self.params
        al, be, b = float(pr.alpha), float(pr.beta), float(pr.b)
        return (1 - x) ** (al + 1) * (1 + x) ** (be + 1) / (x - b) ** 2


@dataclass(frozen=True)
class WMinus2Form:
    """p (f g' - f' g) with p = (1-x)^-1 (1+x)^(beta+1)."""

    beta: Union[Fraction, float]

    def coefficient(self, x):
        return (1 + x) ** (float(self.beta) + 1) / (1 - x)


@dataclass(frozen=True)
class PhiForm:
    """(1-x)(1+x)^(beta+3) (f''' g'' - f'' g''')."""

    beta: Union[Fraction, float]

    def coefficient(self, x):
        return (1 - x) * (1 + x) ** (float(self.beta) + 3)


BoundaryFormSpec = Union[WHatForm, WMinus2Form, PhiForm]


def boundary_form(form: BoundaryFormSpec, f, g, x):
    """Evaluate the boundary form of ``f`` and ``g`` at interior points ``x``."""
    x = np.asarray(x, dtype=float)
    fs, gs = as_smooth(f), as_smooth(g)
    if isinstance(form, PhiForm):
        lo, hi = 2, 3
    else:
        lo, hi = 0, 1
    wr = fs.derivative(hi)(x) * gs.derivative(lo)(x) - fs.derivative(lo)(x) * gs.derivative(hi)(x)
    if isinstance(form, PhiForm):
        return form.coefficient(x) * wr
    # p (f g' - f' g)
    return -form.coefficient(x) * wr


@dataclass
class BoundaryLimit:
    value: float
    converged: bool
    samples: list = field(default_factory=list)
    tolerance: float = 1e-8

    def to_json(self) -> dict:
        return {"value": self.value, "converged": self.converged, "tolerance": self.tolerance}


def _aitken(v0, v1, v2):
    denom = v2 - 2 * v1 + v0
    if denom == 0 or not math.isfinite(denom):
        return v2
    acc = v2 - (v2 - v1) ** 2 / denom
    # Aitken is only meaningful on a monotone or alternating geometric tail
    if abs(acc - v2) > 10 * abs(v2 - v1) + 1e-300:
        return v2
    return acc


def _contracting(samples) -> bool:
    """Raw differences shrink, so the extrapolant is a limit and not an antilimit."""
    v = [s[1] for s in samples[-3:]]
    return abs(v[2] - v[1]) <= abs(v[1] - v[0])


def endpoint_limit(fn, endpoint: int, *, h0: float = 0.1, k_max: int = 40,
                   tol: float = 1e-8, growth_factor: float = 1.5,
                   growth_run: int = 5) -> BoundaryLimit:
    """Limit of a scalar function of x at an endpoint of [-1, 1].

    Samples at x_k = endpoint -/+ h0 2^-k, k = 0..k_max, and accelerates the
    sequence with Aitken's delta-squared process.  The limit is declared once
    three consecutive extrapolated values agree within ``tol`` (relative to
    max(1, |value|)).

    Raises
    ------
    Diverged
        |values| grew by ``growth_factor`` or more over ``growth_run``
        consecutive samples; the message carries the estimated power law.
    """
    if endpoint not in (1, -1):
        raise ValueError("endpoint must be +1 or -1")
    samples: list[tuple[float, float]] = []
    acc: list[float] = []
    run = 0
    for k in range(k_max + 1):
        x = endpoint - endpoint * h0 * 2.0 ** (-k)
        if abs(x) >= 1.0:
            break
        v = float(np.asarray(fn(np.array([x])))[0])
        if not math.isfinite(v):
            raise Diverged(f"non-finite boundary value at x = {x!r}")
        samples.append((x, v))
        if len(samples) >= 2:
            prev = samples[-2][1]
            if abs(prev) > 0 and abs(v) >= growth_factor * abs(prev):
                run += 1
            else:
                run = 0
            if run >= growth_run:
                rate = math.log2(abs(v) / abs(prev))
                raise Diverged(
                    f"boundary values grow like |x - ({endpoint})|^{-rate:.3g}",
                    growth_exponent=-rate,
                )
        if len(samples) >= 3:
            acc.append(_aitken(samples[-3][1], samples[-2][1], v))
        if len(acc) >= 3 and _contracting(samples):
            last = acc[-3:]
            scale = max(1.0, abs(last[-1]))
            if max(last) - min(last) <= tol * scale:
                return BoundaryLimit(last[-1], True, samples, tol)
    value = acc[-1] if acc else (samples[-1][1] if samples else float("nan"))
    return BoundaryLimit(value, False, samples, tol)


def boundary_limit(form: BoundaryFormSpec, f, g, endpoint: int, **kwargs) -> BoundaryLimit:
    """Endpoint limit of ``boundary_form(form, f, g, x)`` as x -> endpoint."""
    return endpoint_limit(lambda x: boundary_form(form, f, g, x), endpoint, **kwargs)


def boundary_difference(form: BoundaryFormSpec, f, g, **kwargs) -> tuple[float, BoundaryLimit, BoundaryLimit]:
    """[f, g](1) - [f, g](-1) together with both limits."""
    up = boundary_limit(form, f, g, 1, **kwargs)
    down = boundary_limit(form, f, g, -1, **kwargs)
    return up.value - down.value, up, down


# --------------------------------------------------------------------------
# Glazman boundary function
# --------------------------------------------------------------------------

def glazman_gtilde(x, derivative: int = 0):
    """C^2 cut-off: 1 on [-1, -1/2], 0 on [0, 1], quintic smoothstep between.

    ``derivative`` selects the 0th to 3rd derivative.
    """
    x = np.asarray(x, dtype=float)
    s = np.clip(2 * x + 1, 0.0, 1.0)
    inside = (x > -0.5) & (x < 0.0)
    if derivative == 0:
        return 1.0 - (6 * s ** 5 - 15 * s ** 4 + 10 * s ** 3)
    if derivative == 1:
        out = -2 * (30 * s ** 4 - 60 * s ** 3 + 30 * s ** 2)
    elif derivative == 2:
        out = -4 * (120 * s ** 3 - 180 * s ** 2 + 60 * s)
    elif derivative == 3:
        out = -8 * (360 * s ** 2 - 360 * s + 60)
    else:
        raise ValueError("derivative must be 0..3")
    return np.where(inside, out, 0.0)


def glazman_function() -> Smooth:
    return Smooth(*(lambda x, k=k: glazman_gtilde(x, k) for k in range(4)))


def glazman_cubic() -> Smooth:
    """C^1 alternative 16x^3 + 12x^2 on [-1/2, 0] (1 to the left, 0 to the right)."""

    def piece(coeffs, left):
        def fn(x):
            x = np.asarray(x, dtype=float)
            poly = sum(c * x ** i for i, c in enumerate(coeffs))
            return np.where(x <= -0.5, left, np.where(x >= 0.0, 0.0, poly))
        return fn

    return Smooth(piece([0, 0, 12, 16], 1.0), piece([0, 24, 48], 0.0),
                  piece([24, 96], 0.0), piece([96], 0.0))
