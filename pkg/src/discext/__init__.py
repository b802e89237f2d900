"""Self-adjoint extensions of rotation-invariant elliptic operators on the disc.

Numerical machinery for the boundary-triple / Weyl-function description of
self-adjoint extensions of -div(a grad) + c on the unit disc restricted to
finitely many angular modes: radial eigensolvers, per-mode deficiency and
Weyl-function elements with controlled series tails, extension resolvents,
spectral engineering (choosing couplings that place prescribed eigenvalues),
and a finite-dimensional matrix model of the same formulas for cross-checks.
"""

from .bessel import (BesselZeroTable, bessel_i, bessel_j, bessel_j_zero,
                     zero_table)
from .errors import (ConfigError, ConvergenceError, DiscExtError, PoleError,
                     TruncationError, ValidationError)
from .finite import (FiniteModel, check_domain_condition, criterion_roots,
                     gamma_matrix, gz_matrix, krein_resolvent, random_model,
                     recover_extension)
from .krein import (ExtensionParameter, GammaEvaluation, SyntheticEigenfunction,
                    engineer_theta, find_extension_eigenvalues, g0_element,
                    gamma_diag, gamma_laplacian_closed, gz_element,
                    lambda_weight, resolvent_block, resolvent_element,
                    resolvent_identity_defect, synthesize_eigenfunction)
from .radial import (ModeSpectrum, RadialCoefficients, bessel_mode_spectrum,
                     ode_residual, resolve_shift, solve_mode)
from .validate import CheckResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "BesselZeroTable", "bessel_i", "bessel_j", "bessel_j_zero", "zero_table",
    "DiscExtError", "ValidationError", "PoleError", "TruncationError",
    "ConvergenceError", "ConfigError",
    "RadialCoefficients", "ModeSpectrum", "solve_mode", "bessel_mode_spectrum",
    "ode_residual", "resolve_shift",
    "ExtensionParameter", "GammaEvaluation", "SyntheticEigenfunction",
    "lambda_weight", "g0_element", "gz_element", "gamma_diag",
    "gamma_laplacian_closed", "resolvent_element", "resolvent_block",
    "resolvent_identity_defect", "engineer_theta", "find_extension_eigenvalues",
    "synthesize_eigenfunction",
    "FiniteModel", "random_model", "gz_matrix", "gamma_matrix",
    "krein_resolvent", "recover_extension", "check_domain_condition",
    "criterion_roots",
    "CheckResult", "run_suite",
    "__version__",
]
