"""A weighted L^2 inequality for a pair of integral operators, evaluated numerically.

For weights phi (square integrable near a), psi (near b) and omega > 0 the
operators

    (A f)(x) = phi(x) int_x^b psi f omega,    (B f)(x) = psi(x) int_a^x phi f omega

are bounded on L^2((a, b); omega) iff K = sup_x K(x) is finite, where
K(x) = (int_a^x |phi|^2 omega)^(1/2) (int_x^b |psi|^2 omega)^(1/2), and then
||A f||, ||B f|| <= 2 K ||f||.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from ..errors import UnboundedK
from .endpoints import DEAD_ZONE, decay_rate, window_energies

PANELS = 400
PANEL_NODES = 12
EDGE_LEVELS = 30


@dataclass
class ChelResult:
    K: float
    ratio_A: float
    ratio_B: float
    argmax: float

    @property
    def certified(self) -> bool:
        bound = 2 * self.K * (1 + 1e-12)
        return math.isfinite(self.K) and self.ratio_A <= bound and self.ratio_B <= bound

    def to_json(self) -> dict:
        return {"K": self.K, "ratio_A": self.ratio_A, "ratio_B": self.ratio_B,
                "argmax": self.argmax, "certified": self.certified}


class _Composite:
    """Composite Gauss-Legendre rule with cumulative partial integrals."""

    def __init__(self, a: float, b: float, panels: int = PANELS, nodes: int = PANEL_NODES):
        u, w = np.polynomial.legendre.leggauss(nodes)
        self.u, self.w = u, w
        self.edges = np.linspace(a, b, panels + 1)
        h = np.diff(self.edges)
        self.x = (self.edges[:-1, None] + (u[None, :] + 1) * h[:, None] / 2).ravel()
        self.wx = (w[None, :] * h[:, None] / 2).ravel()
        self.panel_of = np.repeat(np.arange(panels), nodes)

    def integral(self, values: np.ndarray) -> float:
        return float(np.dot(self.wx, values))

    def partial(self, fn, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """int_lo^hi fn over short intervals, one Gauss-Legendre rule each."""
        h = (hi - lo)[:, None]
        t = lo[:, None] + (self.u[None, :] + 1) * h / 2
        return (fn(t) * self.w[None, :]).sum(axis=1) * (hi - lo) / 2

    def running(self, fn) -> tuple[Callable[[np.ndarray], np.ndarray], float]:
        """Callable x -> int_a^x fn, built from panel sums plus a partial panel."""
        vals = fn(self.x) * self.wx
        per_panel = vals.reshape(-1, len(self.u)).sum(axis=1)
        cum = np.concatenate([[0.0], np.cumsum(per_panel)])
        edges = self.edges

        def upto(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            k = np.clip(np.searchsorted(edges, x, side="right") - 1, 0, len(edges) - 2)
            return cum[k] + self.partial(fn, edges[k], x)

        return upto, float(cum[-1])


def _tail_integrable(density) -> bool:
    e = window_energies(density)
    if np.all(e == 0):
        return True
    return bool(np.all(np.isfinite(e))) and decay_rate(np.abs(e) + 1e-300) > DEAD_ZONE


def chel_constant(phi, psi, omega, interval: tuple[float, float]) -> tuple[float, float]:
    """(K, argmax) with K = sup_x K(x).

    The supremum is searched on the composite nodes plus geometric grids
    towards both ends, then refined by bounded scalar minimisation.

    Raises
    ------
    UnboundedK
        The integrals are infinite or K(x) keeps growing towards an endpoint.
    """
    a, b = interval
    width = b - a
    if not _tail_integrable(lambda t: np.abs(phi(a + t * width)) ** 2 * omega(a + t * width) * width):
        raise UnboundedK("|phi|^2 omega is not integrable near the left endpoint")
    if not _tail_integrable(lambda t: np.abs(psi(b - t * width)) ** 2 * omega(b - t * width) * width):
        raise UnboundedK("|psi|^2 omega is not integrable near the right endpoint")
    comp = _Composite(a, b)
    left, total_phi = comp.running(lambda x: np.abs(phi(x)) ** 2 * omega(x))
    right, total_psi = comp.running(lambda x: np.abs(psi(x)) ** 2 * omega(x))
    if not (math.isfinite(total_phi) and math.isfinite(total_psi)):
        raise UnboundedK("the defining integrals are not finite")

    def K(x):
        lo = np.maximum(left(x), 0.0)
        hi = np.maximum(total_psi - right(x), 0.0)
        return np.sqrt(lo * hi)

    near_a = a + width * 2.0 ** -np.arange(1, EDGE_LEVELS + 1)
    near_b = b - width * 2.0 ** -np.arange(1, EDGE_LEVELS + 1)
    for edge in (near_a, near_b):
        ke = K(edge)
        if not np.all(np.isfinite(ke)):
            raise UnboundedK("K(x) is not finite near an endpoint")
        tail = ke[-6:]
        if np.all(np.diff(tail) > 1e-3 * np.abs(tail[:-1])) and ke.argmax() == len(ke) - 1:
            raise UnboundedK("K(x) grows without bound towards an endpoint")
    grid = np.concatenate([comp.edges, near_a, near_b])
    kg = K(grid)
    i = int(np.argmax(kg))
    order = np.sort(grid)
    j = int(np.searchsorted(order, grid[i]))
    lo = order[max(j - 1, 0)]
    hi = order[min(j + 1, len(order) - 1)]
    best_x, best = grid[i], float(kg[i])
    if hi > lo:
        res = minimize_scalar(lambda x: -float(K(x)[0]), bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12})
        if -res.fun > best:
            best_x, best = float(res.x), float(-res.fun)
    return best, best_x


def operator_ratios(phi, psi, omega, interval, f) -> tuple[float, float]:
    """(||A f|| / ||f||, ||B f|| / ||f||) in L^2(omega); both 0 for f = 0."""
    a, b = interval
    comp = _Composite(a, b)
    x = comp.x
    fw = omega(x)
    norm_f = math.sqrt(comp.integral(np.abs(f(x)) ** 2 * fw))
    if norm_f == 0:
        return 0.0, 0.0
    psi_part, psi_total = comp.running(lambda t: psi(t) * f(t) * omega(t))
    phi_part, _ = comp.running(lambda t: phi(t) * f(t) * omega(t))
    Af = phi(x) * (psi_total - psi_part(x))
    Bf = psi(x) * phi_part(x)
    na = math.sqrt(comp.integral(np.abs(Af) ** 2 * fw))
    nb = math.sqrt(comp.integral(np.abs(Bf) ** 2 * fw))
    return na / norm_f, nb / norm_f


def chel_bound(phi, psi, omega, interval: tuple[float, float], probe=None) -> ChelResult:
    """K together with the operator ratios for one probe function."""
    K, where = chel_constant(phi, psi, omega, interval)
    if probe is None:
        ra = rb = 0.0
    else:
        ra, rb = operator_ratios(phi, psi, omega, interval, probe)
    return ChelResult(K, ra, rb, where)


def random_probes(count: int, seed: int, degree: int = 6) -> list:
    """Seeded smooth probes: random trigonometric-polynomial mixtures on the interval."""
    rng = np.random.default_rng(seed)
    probes = []
    for _ in range(count):
        c = rng.normal(size=degree + 1)
        s = rng.normal(size=degree + 1)
        probes.append(lambda x, c=c, s=s: sum(c[k] * np.cos(k * np.pi * x) + s[k] * np.sin(k * np.pi * x)
                                              for k in range(len(c))))
    return probes


def properties_at_plus_one_instance(beta: float):
    """(phi, psi, omega, interval) used to show f' is square integrable near x = 1."""
    phi = lambda x: (1 - x) * (1 + x) ** (-beta / 2)
    psi = lambda x: (1 - x) * (1 + x) ** (-beta - 1)
    omega = lambda x: np.ones_like(np.asarray(x, dtype=float))
    return phi, psi, omega, (0.0, 1.0)
