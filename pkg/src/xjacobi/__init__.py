"""Exceptional X1 Jacobi polynomials, the non-classical family P_n^(-2,beta),
and numerical checks of their orthogonality and spectral properties."""
from .errors import (
    BetaZero,
    DegenerateFamily,
    Diverged,
    DomainError,
    EigensolverFailure,
    GammaPole,
    InconclusiveNearThreshold,
    OverflowInExact,
    PoleAt,
    RegimeViolation,
    RootFindingFailure,
    SingularIntegrand,
    UnboundedK,
    XJacobiError,
)
from .families import (
    ClassicalFamily,
    NonClassicalFamily,
    ParameterSet,
    Regime,
    X1Family,
    classical_jacobi,
    nonclassical_eigenvalue,
    nonclassical_jacobi,
    nonclassical_norm_squared,
    validate_parameters,
    x1_eigenvalue,
    x1_jacobi,
    x1_norm_squared,
)
from .functions import Smooth
from .polynomial import Polynomial, RationalFunction
from .roots import find_roots, x1_root_report
from .sobolev import SobolevElement, apply_T, decompose, norm_comparison, s2_equals_v2_check, t_matrix

__version__ = "0.1.0"
