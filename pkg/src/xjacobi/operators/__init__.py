"""Differential expressions, boundary forms, endpoint analysis and operator identities."""
from .boundary import (
    BoundaryLimit,
    PhiForm,
    WHatForm,
    WMinus2Form,
    boundary_difference,
    boundary_form,
    boundary_limit,
    endpoint_limit,
    glazman_cubic,
    glazman_function,
    glazman_gtilde,
)
from .chel import ChelResult, chel_bound, chel_constant, operator_ratios, random_probes
from .endpoints import (
    EndpointAnalysis,
    EndpointClass,
    FrobeniusReport,
    MembershipReport,
    THat,
    TMinus2,
    check_domain_membership,
    classify_endpoints,
    deficiency_index,
    verify_frobenius_numeric,
)
from .expressions import (
    LHat,
    LZeroBeta,
    MMinus2,
    apply_expression,
    apply_expression_poly,
    apply_pointwise,
    apply_symmetric_form,
    eigen_residual,
    expression_for,
    symmetric_coefficients,
)
from .identities import dirichlet_residual, greens_residual, operator_matrix, rayleigh_quotient

__all__ = [
    "BoundaryLimit", "ChelResult", "EndpointAnalysis", "EndpointClass", "FrobeniusReport",
    "LHat", "LZeroBeta", "MMinus2", "MembershipReport", "PhiForm", "THat", "TMinus2",
    "WHatForm", "WMinus2Form", "apply_expression", "apply_expression_poly", "apply_pointwise",
    "apply_symmetric_form", "boundary_difference", "boundary_form", "boundary_limit",
    "chel_bound", "chel_constant", "check_domain_membership", "classify_endpoints",
    "deficiency_index", "dirichlet_residual", "eigen_residual", "endpoint_limit",
    "expression_for", "glazman_cubic", "glazman_function", "glazman_gtilde",
    "greens_residual", "operator_matrix", "operator_ratios", "random_probes",
    "rayleigh_quotient", "symmetric_coefficients", "verify_frobenius_numeric",
]
