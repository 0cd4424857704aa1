"""Roots of polynomials and the root structure of the X1 family.

Roots come from the eigenvalues of the companion matrix and are then polished
by Newton's method.  Real roots of exact polynomials are certified by an exact
rational evaluation of the residual.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import RootFindingFailure
from .families import ParameterSet, x1_jacobi
from .polynomial import Polynomial

RESIDUAL_TOL = 1e-12
REAL_TOL = 1e-10
NEWTON_STEPS = 50


def companion_matrix(p: Polynomial) -> np.ndarray:
    """Frobenius companion matrix of the monic rescaling of ``p``."""
    if p.degree < 1:
        raise ValueError("companion matrix needs degree >= 1")
    c = p.float_coeffs()
    n = p.degree
    m = np.zeros((n, n))
    m[1:, :-1] = np.eye(n - 1)
    m[:, -1] = -c[:-1] / c[-1]
    return m


def relative_residual(p: Polynomial, z) -> float:
    """|p(z)| / sum |c_k| |z|^k, evaluated exactly for real z and exact p."""
    if p.exact and abs(complex(z).imag) == 0:
        x = Fraction(float(complex(z).real))
        num = abs(p(x))
        den = sum(abs(c) * abs(x) ** k for k, c in enumerate(p.coeffs))
        return float(num / den) if den else 0.0
    cs = p.float_coeffs()
    z = complex(z)
    num = abs(np.polyval(cs[::-1], z))
    den = float(np.polyval(np.abs(cs[::-1]), abs(z)))
    return num / den if den else 0.0


def _newton(p: Polynomial, z: complex) -> complex:
    cs = p.float_coeffs()[::-1]
    ds = p.deriv().float_coeffs()[::-1]
    for _ in range(NEWTON_STEPS):
        fz = np.polyval(cs, z)
        dz = np.polyval(ds, z)
        if dz == 0:
            break
        step = fz / dz
        z = z - step
        if abs(step) <= 1e-17 * max(1.0, abs(z)):
            break
    return z


def find_roots(p: Polynomial, tol: float = RESIDUAL_TOL) -> np.ndarray:
    """All complex roots of ``p``, polished to relative residual ``<= tol``.

    Nearly real roots (imaginary part below 1e-10 relative) are snapped to
    the real axis before polishing.

    Raises
    ------
    RootFindingFailure
        Some polished root still has a larger residual.
    """
    raw = np.linalg.eigvals(companion_matrix(p))
    out = []
    for z in raw:
        if abs(z.imag) <= REAL_TOL * max(1.0, abs(z)):
            z = complex(z.real, 0.0)
        z = _newton(p, z)
        if z.imag == 0 or abs(z.imag) <= REAL_TOL * max(1.0, abs(z)):
            z = complex(z.real, 0.0)
        res = relative_residual(p, z)
        if res > tol:
            raise RootFindingFailure(f"root {z} has relative residual {res:.3g} > {tol:g}")
        out.append(z)
    return np.array(sorted(out, key=lambda w: (w.real, w.imag)))


@dataclass
class RootReport:
    n: int
    roots: list
    interior: list
    outside: list
    exceptional_root: float | None
    distance_to_b: float | None
    exceptional_sign: int | None
    negative_root_claim_conflict: bool
    simple_interior: bool

    def to_json(self) -> dict:
        def enc(z):
            z = complex(z)
            return float(z.real) if z.imag == 0 else [float(z.real), float(z.imag)]

        return {
            "n": self.n,
            "roots": [enc(z) for z in self.roots],
            "interior_count": len(self.interior),
            "outside_count": len(self.outside),
            "exceptional_root": None if self.exceptional_root is None else float(self.exceptional_root),
            "distance_to_b": None if self.distance_to_b is None else float(self.distance_to_b),
            "exceptional_sign": self.exceptional_sign,
            "negative_root_claim_conflict": self.negative_root_claim_conflict,
            "simple_interior": self.simple_interior,
        }


def x1_root_report(n: int, params: ParameterSet) -> RootReport:
    """Interior roots, roots off [-1, 1] and the exceptional root of P-hat_n.

    The exceptional root is the real root outside [-1, 1] nearest to b.  A
    conflict is flagged when it is positive, since it would then not be the
    single negative root one might expect from the location of the interior
    roots.
    """
    p = x1_jacobi(n, params)
    roots = find_roots(p)
    interior = [z.real for z in roots if z.imag == 0 and -1 < z.real < 1]
    outside = [z for z in roots if not (z.imag == 0 and -1 < z.real < 1)]
    b = float(params.b)
    real_out = [z.real for z in outside if z.imag == 0 and abs(z.real) > 1]
    if real_out:
        star = min(real_out, key=lambda x: abs(x - b))
        dist = abs(star - b)
        sign = 1 if star > 0 else -1
    else:
        star = dist = sign = None
    simple = len(set(np.round(interior, 12))) == len(interior)
    return RootReport(n, list(roots), interior, outside, star, dist, sign,
                      sign is not None and sign > 0, simple)


def asymptotic_distances(params: ParameterSet, ns) -> list[tuple[int, float | None]]:
    """(n, |x*_n - b|) for each degree in ``ns``."""
    return [(n, x1_root_report(n, params).distance_to_b) for n in ns]
