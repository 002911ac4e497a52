"""siegelkappa: exact and high-precision invariants of Borcherds forms on the
Siegel threefold.

Exact q-series arithmetic with fractional exponents, the Gritsenko-Nikulin
input forms, Cohen numbers and local Euler factors, Dirichlet L-derivatives
at s = -1, and the assembled log-norm integrals kappa(Psi(f)) with full
audit breakdowns.
"""

from .arith import (FundDiscDecomp, cohen_H, cohen_H_divisor_sum, cohen_H_euler,
                    fund_disc_decompose, gen_bernoulli, kronecker_chi,
                    l_value_neg, local_b, local_b_logderiv)
from .borcherds import (Divisor, KappaReport, degree_identity_check,
                        delta5_normalization, divisor_of_psi,
                        extract_principal_part, kappa_psi, weight_of_psi_squared)
from .eisen import (SIEGEL, SignatureContext, b_mu, degree_Z, eis_value_coeff,
                    j_integral, kappa_mu, signature_context, whittaker_arch)
from .jacobi import (VectorValuedForm, build_vv_form, jacobi_cusp_coefficients,
                     phi12_theta_components, scale_by_j_power)
from .lfun import (LDerivResult, PrecisionConfig, constants, dirichlet_L_deriv,
                   hurwitz_zeta_deriv, zeta_logderiv)
from .qseries import QSeries, build_delta, build_e4, build_e6, build_j

__version__ = "0.1.0"

__all__ = [
    "FundDiscDecomp", "cohen_H", "cohen_H_divisor_sum", "cohen_H_euler",
    "fund_disc_decompose", "gen_bernoulli", "kronecker_chi", "l_value_neg",
    "local_b", "local_b_logderiv",
    "Divisor", "KappaReport", "degree_identity_check", "delta5_normalization",
    "divisor_of_psi", "extract_principal_part", "kappa_psi",
    "weight_of_psi_squared",
    "SIEGEL", "SignatureContext", "b_mu", "degree_Z", "eis_value_coeff",
    "j_integral", "kappa_mu", "signature_context", "whittaker_arch",
    "VectorValuedForm", "build_vv_form", "jacobi_cusp_coefficients",
    "phi12_theta_components", "scale_by_j_power",
    "LDerivResult", "PrecisionConfig", "constants", "dirichlet_L_deriv",
    "hurwitz_zeta_deriv", "zeta_logderiv",
    "QSeries", "build_delta", "build_e4", "build_e6", "build_j",
    "__version__",
]
