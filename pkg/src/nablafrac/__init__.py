"""Discrete fractional calculus on unit-step grids: nabla and delta
fractional sums and differences (Riemann and Caputo), exact verification of
their summation-by-parts identities, and fractional variational problems
with Euler-Lagrange solvers."""

from .backend import format_scalar, parse_scalar, rational
from .grid import (DomainError, Grid, GridFn, inner_sum, read_gridfn_csv,
                   shift_rho, shift_sigma, write_gridfn_csv)
from .numerics import (FracOrder, falling_factorial, minus_delta_n, nabla_n,
                       rising_factorial, weights)
from .operators import (caputo_left, caputo_right, delta_left_riemann,
                        delta_left_sum, delta_right_riemann, delta_right_sum,
                        nabla_left_riemann, nabla_left_sum, nabla_left_sum_fn,
                        nabla_right_riemann, nabla_right_sum,
                        nabla_right_sum_fn, operator_matrix)
from .identities import (FLOAT_TOLERANCE, VERIFY_ALPHAS, VERIFY_SIZES,
                         IdentityReport, run_trial)
from .variational import (Boundary, Formulation, Lagrangian, Solution,
                          VariationalProblem, action, el_residual,
                          el_residual_forms, eta_shift_decomposition,
                          first_variation, gradient_oracle, solve)

__version__ = "0.1.0"
