"""Zeros of rescaled Charlier polynomials with negative parameter.

p_n(z; a) = a^n P_n^C(z; a) is evaluated by its three-term recurrence
(binary64 or MPFR, chosen adaptively), its roots are computed by Aberth
iteration, and the root clouds are compared with the limiting measure built
from the saddle points of the phase function.
"""
from ._backend import BACKEND
from .charlier_core import (BatchEval, PolyEval, ScaledComplex, TridiagonalMatrix,
                            contour_pn_oracle, empirical_cauchy, eval_pn, eval_pn_many,
                            jacobi_matrix, sampled_jacobi, tridiagonal_det)
from .curve import (CurveSample, TracedCurve, gamma1, gamma1_min, ode_residual, solve_y0,
                    threshold_a, trace_curve)
from .errors import *  # noqa: F401,F403
from .measure import (MeasureSummary, density_mu1, mu1_arc_mass, mu2_density,
                      total_mass, trapezoid_arc_mass)
from .precision import working_precision
from .roots import (EmpiricalCdf, RootSet, cdf_sup_distance, count_zeros,
                    empirical_cdf_on_curve, find_roots, real_cluster_fraction,
                    roots_by_argument_principle)
from .saddle import (RegionTag, SaddlePair, classify, f_eval, g_value, limiting_cauchy,
                     rho, saddle_points)
from .verify import VerificationReport, run_verification

__version__ = "0.1.0"
