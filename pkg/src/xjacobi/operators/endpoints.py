"""Limit-point / limit-circle classification and domain membership.

The analytic classification reads the Frobenius indicial roots at each
singular endpoint.  :func:`verify_frobenius_numeric` checks it independently
by measuring how the weighted energy of each local solution decays over
dyadic windows approaching the endpoint.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ..errors import Diverged, InconclusiveNearThreshold
from ..families import ParameterSet
from ..functions import as_smooth
from ..polynomial import Polynomial
from .boundary import endpoint_limit
from .expressions import (
    Expression,
    LHat,
    MMinus2,
    apply_expression,
    apply_pointwise,
    symmetric_coefficients,
)

DEAD_ZONE = 1e-3
WINDOW_FIRST, WINDOW_LAST = 10, 40
WINDOW_NODES = 24


class EndpointClass(str, enum.Enum):
    LIMIT_POINT = "LP"
    LIMIT_CIRCLE = "LC"


@dataclass(frozen=True)
class EndpointAnalysis:
    endpoint: int
    indicial_roots: tuple
    classification: EndpointClass
    deficiency: tuple

    def to_json(self) -> dict:
        return {
            "endpoint": self.endpoint,
            "indicial_roots": [float(r) for r in self.indicial_roots],
            "classification": self.classification.value,
            "deficiency": list(self.deficiency),
        }


def _lc(exponent) -> bool:
    return -1 < exponent < 1


def _endpoint_exponent(expr: Expression, endpoint: int):
    """The parameter governing the endpoint: alpha at +1 and beta at -1 for LHat."""
    if isinstance(expr, LHat):
        return expr.params.alpha if endpoint == 1 else expr.params.beta
    return None if endpoint == 1 else expr.beta


def classify_endpoints(expr: Expression) -> tuple[EndpointAnalysis, EndpointAnalysis]:
    """Analytic classification at +1 and -1 with the deficiency index."""
    rows = []
    for e in (1, -1):
        par = _endpoint_exponent(expr, e)
        if par is None:
            # m_{-2,beta} and its unperturbed form at +1: roots 0 and 2, always LP
            roots, cls = (0, 2), EndpointClass.LIMIT_POINT
        else:
            roots = (0, -par)
            cls = EndpointClass.LIMIT_CIRCLE if _lc(par) else EndpointClass.LIMIT_POINT
        rows.append((e, roots, cls))
    m = sum(cls is EndpointClass.LIMIT_CIRCLE for _, _, cls in rows)
    up, down = (EndpointAnalysis(e, r, c, (m, m)) for e, r, c in rows)
    return up, down


def deficiency_index(expr: Expression) -> tuple[int, int]:
    return classify_endpoints(expr)[0].deficiency


# --------------------------------------------------------------------------
# numeric cross-check
# --------------------------------------------------------------------------

@dataclass
class SolutionEnergy:
    name: str
    decay_rate: float
    square_integrable: bool

    def to_json(self) -> dict:
        return {"solution": self.name, "decay_rate": self.decay_rate,
                "square_integrable": self.square_integrable}


@dataclass
class FrobeniusReport:
    endpoint: int
    solutions: list
    numeric: EndpointClass
    analytic: EndpointClass
    agrees: bool

    def to_json(self) -> dict:
        return {
            "endpoint": self.endpoint,
            "solutions": [s.to_json() for s in self.solutions],
            "numeric": self.numeric.value,
            "analytic": self.analytic.value,
            "agrees": self.agrees,
        }


def _legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def window_energies(density, first: int = WINDOW_FIRST, last: int = WINDOW_LAST,
                    h0: float = 1.0) -> np.ndarray:
    """Integrals of ``density(t)`` over the windows [h0 2^-(k+1), h0 2^-k]."""
    u, wu = _legendre(WINDOW_NODES)
    out = []
    for k in range(first, last + 1):
        hi = h0 * 2.0 ** (-k)
        lo = hi / 2
        t = lo + (u + 1) * (hi - lo) / 2
        out.append(float(np.dot(wu, density(t))) * (hi - lo) / 2)
    return np.array(out)


def decay_rate(energies: np.ndarray) -> float:
    """Least-squares slope of -log2(energy) per halving of the window.

    For an energy density ~ t^e the windows shrink like 2^-(e+1)k, so the
    rate estimates e + 1; the tail sum is finite iff the rate is positive.
    """
    k = np.arange(len(energies), dtype=float)
    logs = np.log2(np.abs(energies))
    slope = np.polyfit(k, logs, 1)[0]
    return float(-slope)


def _local_solutions(expr: Expression, endpoint: int):
    """Name and t-callable of the two leading Frobenius solutions, t = |x - endpoint|."""
    if isinstance(expr, LHat):
        par = float(expr.params.alpha if endpoint == 1 else expr.params.beta)
    elif endpoint == 1:
        return [("1", lambda t: np.ones_like(t)), ("(1-x)^2", lambda t: t ** 2)]
    else:
        par = float(expr.beta)
    side = "1-x" if endpoint == 1 else "1+x"
    return [("1", lambda t: np.ones_like(t)), (f"|{side}|^{-par:g}", lambda t: t ** (-par))]


def _weight_in_t(expr: Expression, endpoint: int):
    """Weight as a function of the distance t to the endpoint (cancellation free)."""
    if isinstance(expr, LHat):
        p = expr.params
        al, be, b = float(p.alpha), float(p.beta), float(p.b)
        if endpoint == 1:
            return lambda t: t ** al * (2 - t) ** be / (1 - t - b) ** 2
        return lambda t: (2 - t) ** al * t ** be / (t - 1 - b) ** 2
    be = float(expr.beta)
    if endpoint == 1:
        return lambda t: t ** -2.0 * (2 - t) ** be
    return lambda t: (2 - t) ** -2.0 * t ** be


def _check_dead_zone(expr: Expression, endpoint: int) -> None:
    par = _endpoint_exponent(expr, endpoint)
    if par is None:
        return
    par = float(par)
    if abs(par - 1) < DEAD_ZONE or abs(par + 1) < DEAD_ZONE:
        raise InconclusiveNearThreshold(
            f"exponent {par:g} lies within {DEAD_ZONE:g} of the LP/LC threshold"
        )


def verify_frobenius_numeric(expr: Expression, endpoint: int) -> FrobeniusReport:
    """Numerically decide square integrability of both local solutions.

    Raises
    ------
    InconclusiveNearThreshold
        The governing exponent is within 1e-3 of +-1, where the energy decays
        too slowly (logarithmically at the threshold) to be resolved.
    """
    _check_dead_zone(expr, endpoint)
    w = _weight_in_t(expr, endpoint)
    sols = []
    for name, z in _local_solutions(expr, endpoint):
        rate = decay_rate(window_energies(lambda t, z=z: np.abs(z(t)) ** 2 * w(t)))
        sols.append(SolutionEnergy(name, rate, rate > 0))
    numeric = (EndpointClass.LIMIT_CIRCLE if all(s.square_integrable for s in sols)
               else EndpointClass.LIMIT_POINT)
    up, down = classify_endpoints(expr)
    analytic = (up if endpoint == 1 else down).classification
    return FrobeniusReport(endpoint, sols, numeric, analytic, numeric is analytic)


# --------------------------------------------------------------------------
# domain membership
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class THat:
    """Self-adjoint operator generated by the X1 expression in L^2(w-hat)."""

    params: ParameterSet

    @property
    def expression(self) -> Expression:
        return LHat(self.params)


@dataclass(frozen=True)
class TMinus2:
    """Self-adjoint operator generated by m_{-2,beta} in L^2(w_{-2,beta})."""

    beta: object

    @property
    def expression(self) -> Expression:
        return MMinus2(self.beta)


Operator = Union[THat, TMinus2]


@dataclass
class EndpointMembership:
    endpoint: int
    maximal_domain: bool
    bc_required: bool
    bc_limit: float | None = None
    bc_pass: bool = True
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.maximal_domain and self.bc_pass

    def to_json(self) -> dict:
        return {"endpoint": self.endpoint, "maximal_domain": self.maximal_domain,
                "bc_required": self.bc_required, "bc_limit": self.bc_limit,
                "bc_pass": self.bc_pass, "note": self.note}


@dataclass
class MembershipReport:
    member: bool
    endpoints: list = field(default_factory=list)
    regularity_verified: bool = True

    def to_json(self) -> dict:
        return {"member": self.member, "endpoints": [e.to_json() for e in self.endpoints],
                "regularity_verified": self.regularity_verified}


def _bc_multiplier(op: Operator, endpoint: int):
    """(1-x)^(alpha+1) at +1 or (1+x)^(beta+1) at -1."""
    if isinstance(op, THat):
        ex = float(op.params.alpha if endpoint == 1 else op.params.beta) + 1
    else:
        ex = float(op.beta) + 1
    if endpoint == 1:
        return lambda x: (1 - x) ** ex
    return lambda x: (1 + x) ** ex


def _tail_integrable(values_in_t) -> bool:
    e = window_energies(values_in_t)
    if np.all(e == 0):
        return True
    if np.any(e == 0):
        e = e + 1e-300
    return decay_rate(e) > DEAD_ZONE


def _maximal_domain_numeric(op: Operator, f, endpoint: int) -> bool:
    """f and expr[f] both square integrable near the endpoint."""
    expr = op.expression
    w = symmetric_coefficients(expr)[3]
    s = as_smooth(f)
    to_x = (lambda t: 1 - t) if endpoint == 1 else (lambda t: -1 + t)
    f_ok = _tail_integrable(lambda t: np.abs(s(to_x(t))) ** 2 * w(to_x(t)))
    lf_ok = _tail_integrable(lambda t: np.abs(apply_pointwise(expr, s, to_x(t))) ** 2 * w(to_x(t)))
    return f_ok and lf_ok


def _polynomial_maximal_domain(op: Operator, f: Polynomial, endpoint: int) -> tuple[bool, str]:
    if isinstance(op, THat) or endpoint == -1:
        # weights with exponent > -1 and bounded expression coefficients
        return True, "polynomial"
    lf = apply_expression(op.expression, f).numerator
    tol = None if f.exact else 1e-10
    ok = f.order_at(1, tol) >= 2 and lf.order_at(1, tol) >= 2
    return ok, "needs a double root at x = 1 (f and m[f])"


def check_domain_membership(op: Operator, f, *, tol: float = 1e-8) -> MembershipReport:
    """Decide whether ``f`` lies in the domain of the self-adjoint operator.

    At every endpoint, ``f`` and ``expr[f]`` must be square integrable.  At
    limit-circle endpoints the boundary condition
    ``lim (1-x)^(alpha+1) f'(x) = 0`` (at +1) or
    ``lim (1+x)^(beta+1) f'(x) = 0`` (at -1) must also hold.
    """
    analyses = classify_endpoints(op.expression)
    rows = []
    for an in analyses:
        e = an.endpoint
        if isinstance(f, Polynomial):
            maximal, note = _polynomial_maximal_domain(op, f, e)
        else:
            maximal, note = _maximal_domain_numeric(op, f, e), "numeric tail exponent"
        row = EndpointMembership(e, maximal, an.classification is EndpointClass.LIMIT_CIRCLE, note=note)
        if row.bc_required:
            mult = _bc_multiplier(op, e)
            d1 = as_smooth(f).derivative(1)
            try:
                lim = endpoint_limit(lambda x: mult(x) * d1(x), e, tol=tol)
                row.bc_limit = lim.value
                row.bc_pass = lim.converged and abs(lim.value) <= tol
            except Diverged as exc:
                row.bc_limit = math.inf
                row.bc_pass = False
                row.note = str(exc)
        rows.append(row)
    regular = isinstance(f, Polynomial) or getattr(f, "regularity_verified", False)
    return MembershipReport(all(r.ok for r in rows), rows, regular)
