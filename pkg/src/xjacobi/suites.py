"""Batteries of numerical checks used by the ``verify`` command.

Each check records the claim it tests, the measured value, the tolerance and
whether it passed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InconclusiveNearThreshold
from .families import (
    NonClassicalFamily,
    ParameterSet,
    X1Family,
    nonclassical_eigenvalue,
    nonclassical_jacobi,
    nonclassical_norm_squared,
    x1_eigenvalue,
    x1_norm_squared,
)
from .functions import Smooth
from .operators import (
    LHat,
    MMinus2,
    THat,
    TMinus2,
    WHatForm,
    WMinus2Form,
    boundary_difference,
    boundary_limit,
    check_domain_membership,
    dirichlet_residual,
    eigen_residual,
    glazman_function,
    greens_residual,
    operator_matrix,
    rayleigh_quotient,
    verify_frobenius_numeric,
)
from .operators.expressions import apply_expression_poly
from .polynomial import Polynomial
from .quadrature import (
    LeftDef1,
    SobolevPhi,
    WHat,
    WMinus2,
    gram_matrix,
    inner_product,
    max_relative_offdiag,
)
from .sobolev import SobolevElement, decompose, norm_comparison, t_matrix


@dataclass(frozen=True)
class Tolerances:
    orth: float = 1e-10
    resid: float = 1e-9
    boundary: float = 1e-8

    def to_json(self) -> dict:
        return {"orth": self.orth, "resid": self.resid, "boundary": self.boundary}


@dataclass
class Check:
    name: str
    claim: str
    value: float | None
    tolerance: float
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "claim": self.claim, "value": _clean(self.value),
               "tolerance": self.tolerance, "passed": bool(self.passed)}
        if self.detail:
            out["detail"] = self.detail
        return out


def _clean(v):
    if isinstance(v, Fraction):
        return float(v)
    if isinstance(v, (np.floating, np.integer)):
        return float(v)
    return v


def _le(name, claim, value, tol, detail="") -> Check:
    value = float(value)
    return Check(name, claim, value, tol, math.isfinite(value) and value <= tol, detail)


def classification_checks(expr) -> list[Check]:
    out = []
    for e in (1, -1):
        try:
            rep = verify_frobenius_numeric(expr, e)
        except InconclusiveNearThreshold as exc:
            out.append(Check(f"frobenius_numeric[{e:+d}]",
                             "numeric square integrability matches the indicial-root classification",
                             None, 0.0, True, f"skipped: {exc}"))
            continue
        out.append(Check(f"frobenius_numeric[{e:+d}]",
                         "numeric square integrability matches the indicial-root classification",
                         0.0 if rep.agrees else 1.0, 0.0, rep.agrees,
                         f"numeric {rep.numeric.value}, analytic {rep.analytic.value}"))
    return out


def exceptional_suite(params: ParameterSet, n_max: int, tol: Tolerances) -> list[Check]:
    fam = X1Family(params)
    checks: list[Check] = []
    worst = max(eigen_residual(LHat(params), fam, n) for n in range(1, n_max + 1))
    limit = 0.0 if params.exact else tol.resid
    checks.append(_le("eigen_residual", "l-hat[P-hat_n] = (n-1)(alpha+beta+n) P-hat_n",
                      worst, limit))

    if params.regime.value == "exceptional":
        gram = gram_matrix(fam, 1, n_max, WHat(params))
        checks.append(_le("orthogonality", "X1 polynomials are orthogonal in L^2(w-hat)",
                          max_relative_offdiag(gram), tol.orth))
        norm_err = max(abs(gram[i, i] / float(x1_norm_squared(i + 1, params)) - 1)
                       for i in range(n_max))
        checks.append(_le("norms", "closed-form squared norms of the X1 polynomials",
                          norm_err, tol.orth))
        bl = 0.0
        pairs = [(i, j) for i in range(1, min(n_max, 4) + 1) for j in range(i + 1, min(n_max, 4) + 1)]
        for i, j in pairs:
            for e in (1, -1):
                lim = boundary_limit(WHatForm(params), fam.member(i), fam.member(j), e, tol=tol.boundary)
                bl = max(bl, abs(lim.value) if lim.converged else math.inf)
        checks.append(_le("boundary_forms", "[P-hat_i, P-hat_j] vanishes at both endpoints",
                          bl, tol.boundary))
        gr = max((greens_residual(LHat(params), fam.member(i), fam.member(j)) for i, j in pairs),
                 default=0.0)
        checks.append(_le("greens_formula", "Green's formula holds for X1 eigenfunctions", gr, tol.resid))
        mat = operator_matrix(THat(params), fam, range(1, n_max + 1))
        lam = np.array([float(x1_eigenvalue(n, params)) for n in range(1, n_max + 1)])
        diag_err = float(np.max(np.abs(np.diag(mat) - lam)) / max(1.0, lam.max()))
        off = float(np.max(np.abs(mat - np.diag(np.diag(mat)))))
        checks.append(_le("operator_matrix", "discrete spectrum {(n-1)(alpha+beta+n)}",
                          max(diag_err, off / max(1.0, lam.max())), tol.resid))
        members = all(check_domain_membership(THat(params), fam.member(n), tol=tol.boundary).member
                      for n in range(1, min(n_max, 6) + 1))
        checks.append(Check("domain_membership", "eigenfunctions satisfy the boundary conditions",
                            0.0 if members else 1.0, 0.0, members))
        checks.extend(classification_checks(LHat(params)))
    return checks


def _random_s2(beta, count: int, seed: int, top: int = 6) -> list[Polynomial]:
    rng = np.random.default_rng(seed)
    basis = [nonclassical_jacobi(n, beta) for n in range(2, top + 1)]
    out = []
    for _ in range(count):
        c = rng.normal(size=len(basis))
        p = Polynomial()
        for ci, b in zip(c, basis):
            p = p + b.to_float() * float(ci)
        out.append(p)
    return out


def glazman_constant(beta) -> float:
    """[g, f](1) - [g, f](-1) for the Glazman function g and f = (1-x)^2 (1+x)^-beta."""
    be = float(beta)
    f = Smooth(lambda x: (1 - x) ** 2 * (1 + x) ** -be,
               lambda x: -2 * (1 - x) * (1 + x) ** -be - be * (1 - x) ** 2 * (1 + x) ** (-be - 1))
    value, _, _ = boundary_difference(WMinus2Form(beta), glazman_function(), f)
    return value


def extreme_suite(beta, n_max: int, tol: Tolerances, seed: int, sobolev: bool) -> list[Check]:
    fam = NonClassicalFamily(beta)
    checks: list[Check] = []
    exact = isinstance(beta, Fraction)
    worst = max(eigen_residual(MMinus2(beta), fam, n) for n in range(0, n_max + 1))
    checks.append(_le("eigen_residual", "m[P_n] = (n^2 + (beta-1) n + 1) P_n",
                      worst, 0.0 if exact else tol.resid))
    gram = gram_matrix(fam, 2, n_max, WMinus2(beta))
    checks.append(_le("orthogonality", "P_n, n >= 2, are orthogonal in L^2(w_{-2,beta})",
                      max_relative_offdiag(gram), tol.orth))
    norm_err = max(abs(gram[i, i] / float(nonclassical_norm_squared(i + 2, beta)) - 1)
                   for i in range(n_max - 1))
    checks.append(_le("norms", "closed-form squared norms of P_n^(-2,beta)", norm_err, tol.orth))

    rq = [rayleigh_quotient(TMinus2(beta), f) for f in _random_s2(beta, 100, seed)]
    checks.append(_le("positivity", "T_{-2,beta} is bounded below by the identity",
                      max(0.0, 1.0 - min(rq)), tol.resid))
    eig_err = max(abs(rayleigh_quotient(TMinus2(beta), fam.member(n))
                      / float(nonclassical_eigenvalue(n, beta)) - 1) for n in range(2, n_max + 1))
    checks.append(_le("rayleigh_eigen", "Rayleigh quotients of eigenfunctions equal lambda_n",
                      eig_err, tol.resid))

    g = glazman_constant(beta)
    checks.append(_le("glazman_constant", "[g, f](1) - [g, f](-1) = 2 beta",
                      abs(g - 2 * float(beta)), 1e-6))

    ld = 0.0
    span = [fam.member(n) for n in range(2, min(n_max, 8) + 1)]
    for f in span:
        for h in span:
            left = inner_product(apply_expression_poly(MMinus2(beta), f), h, WMinus2(beta))
            right = inner_product(f, h, LeftDef1(beta))
            ld = max(ld, abs(left - right) / max(1.0, abs(right)))
    checks.append(_le("left_definite_1", "(T f, g) equals the first left-definite inner product",
                      ld, tol.resid))
    p2, p3 = fam.member(2), fam.member(3)
    dr = max(dirichlet_residual(beta, p2, p2, -0.5, 0.5), dirichlet_residual(beta, p3, p2, -0.9, 0.9),
             dirichlet_residual(beta, p3, p2, 0.0, 0.9, variant=True))
    checks.append(_le("dirichlet_formula", "Dirichlet's formula on compact subintervals", dr, tol.resid))
    gr = max(greens_residual(MMinus2(beta), fam.member(i), fam.member(j))
             for i in range(2, 5) for j in range(i + 1, 6))
    checks.append(_le("greens_formula", "Green's formula for m_{-2,beta}", gr, tol.resid))
    checks.extend(classification_checks(MMinus2(beta)))

    if sobolev:
        phi_gram = gram_matrix(fam, 0, n_max, SobolevPhi(beta))
        checks.append(_le("phi_orthogonality", "P_0..P_N are orthogonal in the Sobolev space",
                          max_relative_offdiag(phi_gram), tol.orth))
        rep = t_matrix(beta, n_max)
        spec_err = max(abs(a - b) for a, b in zip(rep.eigenvalues, rep.expected()))
        checks.append(_le("sobolev_spectrum", "spectrum of T = T1 + T2 is {n^2 + (beta-1) n + 1}",
                          max(spec_err, rep.max_offdiag), tol.resid))
        checks.append(_le("sobolev_symmetry", "T2 is symmetric in the phi inner product",
                          rep.symmetry_defect, tol.resid))
        comp = norm_comparison(beta, span)
        checks.append(Check("norm_comparison", "second left-definite norm dominates the phi norm on S2",
                            comp.min_ratio, 1.0, comp.holds))
        dec_err = 0.0
        for n in range(0, n_max + 1):
            d = decompose(SobolevElement(fam.member(n), beta))
            recon = d.g1 + d.g2.body - fam.member(n)
            dec_err = max(dec_err, recon.max_abs_coeff(), abs(float(d.g2.trace_value)),
                          abs(float(d.g2.trace_derivative)))
        checks.append(_le("decomposition", "S = S1 + S2 reproduces every basis element", dec_err, tol.resid))
    return checks
