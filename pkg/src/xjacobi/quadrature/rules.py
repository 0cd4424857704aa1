"""Gauss-Jacobi rules by the Golub-Welsch algorithm.

The Jacobi matrix of the monic three-term recurrence is diagonalised with an
implicit-shift QL iteration that only tracks the first component of each
eigenvector, which is all the weights need.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import EigensolverFailure

MAX_QL_ITERATIONS = 30


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    alpha: float
    beta: float

    @property
    def count(self) -> int:
        return len(self.nodes)

    def integrate(self, values: np.ndarray) -> float:
        # fixed summation order keeps results reproducible
        return float(np.dot(self.weights, values))

    def to_json(self) -> dict:
        return {
            "nodes": [float(x) for x in self.nodes],
            "weights": [float(w) for w in self.weights],
            "alpha": self.alpha,
            "beta": self.beta,
        }


def jacobi_mu0(alpha: float, beta: float) -> float:
    """Total mass 2^(a+b+1) B(a+1, b+1) of (1-x)^a (1+x)^b on [-1, 1]."""
    log = ((alpha + beta + 1) * math.log(2.0) + math.lgamma(alpha + 1)
           + math.lgamma(beta + 1) - math.lgamma(alpha + beta + 2))
    return math.exp(log)


def jacobi_recurrence(count: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the symmetric Jacobi matrix."""
    a, b = alpha, beta
    diag = np.empty(count)
    off = np.empty(max(count - 1, 0))
    for n in range(count):
        s = 2 * n + a + b
        if n == 0:
            diag[n] = (b - a) / (a + b + 2)
        else:
            diag[n] = (b * b - a * a) / (s * (s + 2))
    for n in range(1, count):
        s = 2 * n + a + b
        if n == 1:
            # (s - 1) may vanish when a + b = -1; this form avoids it
            val = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        else:
            val = 4 * n * (n + a) * (n + b) * (n + a + b) / (s * s * (s + 1) * (s - 1))
        off[n - 1] = math.sqrt(val)
    return diag, off


def tridiagonal_ql(diag, off, max_iter: int = MAX_QL_ITERATIONS):
    """Eigenvalues and first eigenvector components of a symmetric tridiagonal matrix.

    Implicit QL with Wilkinson shifts.  Returns ``(eigenvalues, z)`` where
    ``z[i]`` is the first component of the normalised eigenvector of
    ``eigenvalues[i]``; both sorted ascending by eigenvalue.

    Raises
    ------
    EigensolverFailure
        An eigenvalue needed more than ``max_iter`` sweeps.
    """
    d = np.array(diag, dtype=float)
    n = len(d)
    e = np.zeros(n)
    e[: n - 1] = off
    z = np.zeros(n)
    if n:
        z[0] = 1.0
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= np.finfo(float).eps * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise EigensolverFailure(f"QL iteration did not converge for eigenvalue {l}")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    order = np.argsort(d, kind="stable")
    return d[order], z[order]


@lru_cache(maxsize=256)
def _rule_cached(count: int, alpha: float, beta: float) -> QuadratureRule:
    diag, off = jacobi_recurrence(count, alpha, beta)
    nodes, z = tridiagonal_ql(diag, off)
    weights = jacobi_mu0(alpha, beta) * z * z
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, alpha, beta)


def gauss_jacobi_rule(count: int, alpha_w: float = 0.0, beta_w: float = 0.0) -> QuadratureRule:
    """Gauss rule with ``count`` nodes for the weight (1-x)^alpha_w (1+x)^beta_w.

    Exact for polynomials of degree ``<= 2*count - 1``.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if not (alpha_w > -1 and beta_w > -1):
        raise ValueError("Jacobi exponents must exceed -1")
    return _rule_cached(int(count), float(alpha_w), float(beta_w))


def jacobi_moment_ratio(k: int, alpha, beta) -> Fraction:
    """Exact ``int x^k w / int w`` for rational exponents.

    Uses x = 2t - 1 and the Beta-function ratios
    ``B(a+1, b+j+1)/B(a+1, b+1) = prod_i (b+1+i)/(a+b+2+i)``.
    """
    a, b = Fraction(alpha), Fraction(beta)
    total = Fraction(0)
    ratio = Fraction(1)
    for j in range(k + 1):
        if j > 0:
            ratio *= (b + j) / (a + b + 1 + j)
        total += math.comb(k, j) * 2 ** j * (-1) ** (k - j) * ratio
    return total


def jacobi_moment(k: int, alpha, beta) -> float:
    return jacobi_mu0(float(alpha), float(beta)) * float(jacobi_moment_ratio(k, alpha, beta))
