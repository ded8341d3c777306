"""Numerics for the two-parameter canonical integral operators ``T^(s,t)`` on the Fock space."""

from .errors import (
    CanonFockError,
    DimensionMismatchError,
    DivergenceError,
    DomainError,
    InternalConsistencyError,
    InvalidParameterError,
    KernelNotInFpError,
    KernelOverflowError,
    NotCompactError,
    OutOfDomainError,
)
from .kernel import (
    BOUNDARY_TOL,
    OperatorClass,
    OperatorTag,
    ParameterPair,
    adjoint_phase,
    classify,
    finfty_kernel_norm,
    finfty_norm_bounds,
    fp_kernel_norm,
    kernel_bound,
    kernel_eval,
    unitary_pair,
)
from .operator import (
    FockCoefficients,
    TruncatedOperator,
    apply,
    build_matrix,
    modsq_kernel_eval,
    trace_diagonal,
)
from .quadrature import (
    GaussianIntegralParams,
    QuadraticForm2,
    QuadratureGrid,
    fp_norm_numeric,
    gauss_hermite,
    gaussian_integral_closed,
    gaussian_quadratic_form_r2,
    gaussian_integrand_peak,
    integrate_gaussian_plane,
)
from .scalar import gaussian_moment, hermite, principal_sqrt
from .spectral import (
    EigenfunctionSpec,
    GammaSolution,
    SpectralReport,
    closed_singular_values,
    eigenfunction_coeffs,
    gamma_root,
    numeric_singular_values,
    schatten_bounds,
    schatten_norm_closed,
    spectral_report,
    trace_closed,
    verify_eigenpair,
)
from .fockp import (
    berezin,
    berezin_bound,
    berezin_modsq_lp_norm,
    berezin_modsq_pointwise,
    kernel_l1_profile,
    tkw_fp_norm,
    weyl_apply,
)

__version__ = "0.1.0"
