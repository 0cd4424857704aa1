"""Gauss-Jacobi rules and the weighted inner products built on them."""
from .products import (
    ClassicalWeight,
    LeftDef1,
    LeftDef2,
    SobolevPhi,
    WHat,
    WMinus2,
    completeness_residual,
    gram_matrix,
    gram_to_csv,
    gram_to_json,
    inner_product,
    max_relative_offdiag,
    norm,
    phi_factorized,
    pole_padding,
    traces,
)
from .rules import QuadratureRule, gauss_jacobi_rule, jacobi_moment, jacobi_moment_ratio, tridiagonal_ql

__all__ = [
    "ClassicalWeight", "LeftDef1", "LeftDef2", "SobolevPhi", "WHat", "WMinus2",
    "QuadratureRule", "completeness_residual", "gauss_jacobi_rule", "gram_matrix",
    "gram_to_csv", "gram_to_json", "inner_product", "jacobi_moment", "jacobi_moment_ratio",
    "max_relative_offdiag", "norm", "phi_factorized", "pole_padding", "traces", "tridiagonal_ql",
]
