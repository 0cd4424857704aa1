"""The Sobolev space S = S1 (+) S2 and the operator T = T1 (+) T2.

S carries the inner product

    phi(f, g) = (f(1) + (2/beta) f'(1)) (g(1) + (2/beta) g'(1)) + f'(1) g'(1)
                + int f'' g'' (1+x)^(beta+2) dx.

S1 is the affine functions, S2 the functions with f(1) = f'(1) = 0, and T acts
by m_{-2,beta} on both.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .errors import BetaZero, RegimeViolation
from .families import nonclassical_eigenvalue, nonclassical_jacobi
from .functions import Smooth, as_smooth
from .operators.endpoints import DEAD_ZONE, window_energies, decay_rate
from .operators.expressions import MMinus2, apply_expression_poly, apply_pointwise
from .polynomial import Polynomial
from .quadrature import LeftDef2, SobolevPhi, inner_product, traces


def _require_beta(beta) -> None:
    if beta == 0:
        raise BetaZero("beta != 0 is required: the Sobolev inner product contains 2/beta")
    if not beta > -1:
        raise RegimeViolation("beta > -1 violated")


@dataclass
class SobolevElement:
    """A function together with its traces f(1), f'(1)."""

    body: Union[Polynomial, Smooth]
    beta: object
    trace_value: object = None
    trace_derivative: object = None

    def __post_init__(self):
        _require_beta(self.beta)
        if self.trace_value is None or self.trace_derivative is None:
            if isinstance(self.body, Polynomial) and self.body.exact:
                self.trace_value = self.body(Fraction(1))
                self.trace_derivative = self.body.deriv()(Fraction(1))
            else:
                self.trace_value, self.trace_derivative = traces(self.body)

    @property
    def regularity_verified(self) -> bool:
        return isinstance(self.body, Polynomial) or as_smooth(self.body).regularity_verified

    def phi_norm(self) -> float:
        return math.sqrt(inner_product(self.body, self.body, SobolevPhi(self.beta)))


@dataclass
class Decomposition:
    g1: Polynomial
    g2: SobolevElement


def decompose(f: SobolevElement) -> Decomposition:
    """Split f = g1 + g2 with g1 affine and g2(1) = g2'(1) = 0.

    ``g1(x) = f'(1) x + f(1) - f'(1)``.
    """
    v, d = f.trace_value, f.trace_derivative
    g1 = Polynomial([v - d, d])
    if isinstance(f.body, Polynomial):
        return Decomposition(g1, SobolevElement(f.body - g1, f.beta))
    body2 = as_smooth(f.body) - Smooth.from_polynomial(g1.to_float())
    return Decomposition(g1, SobolevElement(body2, f.beta))


def apply_T(f: SobolevElement, beta=None) -> SobolevElement:
    """T f = m_{-2,beta}[g1] + m_{-2,beta}[g2], reassembled."""
    beta = f.beta if beta is None else beta
    _require_beta(beta)
    expr = MMinus2(beta)
    parts = decompose(f)
    t1 = apply_expression_poly(expr, parts.g1)
    if isinstance(f.body, Polynomial):
        t2 = apply_expression_poly(expr, parts.g2.body)
        return SobolevElement(t1 + t2, beta)
    g2 = parts.g2.body
    t1f = t1.to_float()
    body = Smooth(lambda x: t1f(np.asarray(x, dtype=float)) + apply_pointwise(expr, g2, x))
    return SobolevElement(body, beta)


@dataclass
class SpectralReport:
    beta: object
    N: int
    eigenvalues: list
    matrix: np.ndarray
    max_offdiag: float
    max_cross_block: float
    symmetry_defect: float
    blocks: dict = field(default_factory=dict)

    def expected(self) -> list:
        return sorted(float(nonclassical_eigenvalue(n, self.beta)) for n in range(self.N + 1))

    def to_json(self) -> dict:
        be = self.beta
        return {
            "beta": str(be) if isinstance(be, Fraction) else float(be),
            "N": self.N,
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "max_offdiag": self.max_offdiag,
            "blocks": {k: [float(v) for v in vals] for k, vals in self.blocks.items()},
        }


def t_matrix(beta, N: int) -> SpectralReport:
    """Matrix of T in the phi-normalised basis P_0..P_N of the non-classical family.

    Entry (i, j) is phi(T p_i, p_j) / (||p_i|| ||p_j||).  Rows 0, 1 span S1
    and rows 2..N span S2.
    """
    _require_beta(beta)
    if N < 2:
        raise ValueError("N >= 2 is needed to populate both summands")
    spec = SobolevPhi(beta)
    expr = MMinus2(beta)
    ps = [nonclassical_jacobi(n, beta) for n in range(N + 1)]
    tps = [apply_expression_poly(expr, p) for p in ps]
    norms = [math.sqrt(inner_product(p, p, spec)) for p in ps]
    size = N + 1
    m = np.empty((size, size))
    sym = 0.0
    for i in range(size):
        for j in range(size):
            m[i, j] = inner_product(tps[i], ps[j], spec) / (norms[i] * norms[j])
    for i in range(size):
        for j in range(i + 1, size):
            other = inner_product(ps[i], tps[j], spec) / (norms[i] * norms[j])
            sym = max(sym, abs(m[i, j] - other))
    eig = np.sort(np.linalg.eigvalsh((m + m.T) / 2))
    off = m - np.diag(np.diag(m))
    cross = max(np.max(np.abs(m[:2, 2:])), np.max(np.abs(m[2:, :2])))
    s1 = np.sort(np.linalg.eigvalsh((m[:2, :2] + m[:2, :2].T) / 2))
    s2 = np.sort(np.linalg.eigvalsh((m[2:, 2:] + m[2:, 2:].T) / 2))
    return SpectralReport(beta, N, [float(v) for v in eig], m, float(np.max(np.abs(off))),
                          float(cross), float(sym), {"S1": list(s1), "S2": list(s2)})


@dataclass
class NormComparison:
    ratios: list
    min_ratio: float
    max_ratio: float
    holds: bool

    def to_json(self) -> dict:
        return {"ratios": self.ratios, "min": self.min_ratio, "max": self.max_ratio,
                "holds": self.holds}


def norm_comparison(beta, samples: Iterable) -> NormComparison:
    """Compare the second left-definite norm with the phi norm on S2 samples.

    Each sample must satisfy f(1) = f'(1) = 0 (SingularIntegrand otherwise).
    The one-sided inequality LeftDef2(f, f) >= phi(f, f) is checked with a
    1e-10 relative allowance; the ratio range estimates the equivalence constants.
    """
    _require_beta(beta)
    ratios = []
    holds = True
    for f in samples:
        ld = inner_product(f, f, LeftDef2(beta))
        ph = inner_product(f, f, SobolevPhi(beta))
        ratios.append(ld / ph)
        holds = holds and ld >= ph - 1e-10 * max(1.0, ph)
    return NormComparison(ratios, min(ratios), max(ratios), holds)


@dataclass
class MembershipVerdicts:
    trace_criterion: bool
    integrability_criterion: bool
    integrability_detail: list

    @property
    def agree(self) -> bool:
        return self.trace_criterion == self.integrability_criterion

    def to_json(self) -> dict:
        return {"trace_criterion": self.trace_criterion,
                "integrability_criterion": self.integrability_criterion,
                "detail": self.integrability_detail, "agree": self.agree}


def s2_equals_v2_check(beta, f: Polynomial) -> MembershipVerdicts:
    """Two descriptions of the same space, evaluated independently.

    * traces: f(1) = f'(1) = 0 (f'' is automatically square integrable
      against (1+x)^(beta+2) for a polynomial);
    * integrability: f^(j) square integrable against (1-x)^(j-2) (1+x)^(beta+j)
      for j = 0, 1, 2, decided from the numeric decay of window energies.
    """
    _require_beta(beta)
    el = SobolevElement(f, beta)
    trace_ok = el.trace_value == 0 and el.trace_derivative == 0
    if not f.exact:
        scale = max(f.max_abs_coeff(), 1e-300)
        trace_ok = abs(el.trace_value) < 1e-10 * scale and abs(el.trace_derivative) < 1e-10 * scale
    be = float(beta)
    detail = []
    for j in range(3):
        # re-expand in t = distance to the endpoint so roots there survive rounding
        dj = f.deriv(j)
        at_one = dj.compose_linear(1, -1).to_float()
        at_minus = dj.compose_linear(-1, 1).to_float()
        near_one = window_energies(lambda t, q=at_one, j=j: q(t) ** 2 * t ** (j - 2.0) * (2 - t) ** (be + j))
        near_minus = window_energies(lambda t, q=at_minus, j=j: q(t) ** 2 * (2 - t) ** (j - 2.0) * t ** (be + j))
        ok = all(_finite_tail(e) for e in (near_one, near_minus))
        detail.append({"j": j, "square_integrable": ok})
    return MembershipVerdicts(trace_ok, all(d["square_integrable"] for d in detail), detail)


def _finite_tail(energies: np.ndarray) -> bool:
    if np.all(energies == 0):
        return True
    return decay_rate(np.abs(energies) + 1e-300) > DEAD_ZONE
