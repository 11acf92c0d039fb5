"""Index Whittaker transform calculus.

Special-function evaluation with complex parameters, the product-formula
kernels and their envelope bounds, the generalized translation and
convolution operators, the transform pair with its Plancherel density, and a
resolvent-based solver for second-kind convolution integral equations.
"""

from .convolve import (TranslationRequest, convolve, norm_lp, norm_strip,
                       translate, translate_power)
from .gridfn import DecayClass, GridFunction, default_grid
from .inteq import (EquationSpec, LebedevKernel, PowerKernel,
                    SolvabilityReport, SolveResult, check_solvability,
                    lebedev_eta, nystrom_solve, power_theta_transform,
                    resolvent_transform, solve, theta_transform)
from .kernels import (envelope_coefficient, kernel_envelope, kernel_k,
                      kernel_q, kernel_q_spectral, weight_m, xi_upper_cutoff)
from .quadrature import (IntegralEstimate, QuadratureConfig, default_tau_max,
                         integrate_halfline, integrate_index)
from .specfun import (AccuracyWarning, bessel_k, kummer_psi, ln_gamma,
                      parabolic_d, parabolic_d_scaled, whittaker_w)
from .transform import (TransformResult, apply_L, classical_forward,
                        density_rho, forward, forward_at_complex, inverse,
                        spectral_kernel, theta_map)

__version__ = "0.1.0"

__all__ = [
    "AccuracyWarning", "DecayClass", "EquationSpec", "GridFunction",
    "IntegralEstimate", "LebedevKernel", "PowerKernel", "QuadratureConfig",
    "SolvabilityReport", "SolveResult", "TransformResult",
    "TranslationRequest", "apply_L", "bessel_k", "check_solvability",
    "classical_forward", "convolve", "default_grid", "default_tau_max",
    "density_rho", "envelope_coefficient", "forward", "forward_at_complex",
    "integrate_halfline", "integrate_index", "inverse", "kernel_envelope",
    "kernel_k", "kernel_q", "kernel_q_spectral", "kummer_psi", "lebedev_eta",
    "ln_gamma", "norm_lp", "norm_strip", "nystrom_solve", "parabolic_d",
    "parabolic_d_scaled", "power_theta_transform", "resolvent_transform",
    "solve", "spectral_kernel", "theta_map", "theta_transform", "translate",
    "translate_power", "weight_m", "whittaker_w", "xi_upper_cutoff",
]
