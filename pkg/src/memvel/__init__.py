"""Numerical evaluation of the memory-weighted velocity operator

    V[x](t) = (beta+1) Gamma(beta) / (t^(beta+1) Gamma(alpha)) * int_0^t (t-tau)^(alpha-1) [x(t) - x(tau)] dtau

with time-varying exponents alpha(t), beta(t) in (0, 1], plus checks of its
closed forms, bounds and limit behaviour.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DomainError,
    EvaluationError,
    ExprSyntaxError,
    HypothesisError,
    MemvelError,
    ScheduleRangeError,
    UnknownIdentifierError,
)
from .expr import differentiate, eval_ast, parse, to_source
from .schedule import ExponentSchedule, exponent_at, make_schedule
from .trajectory import C1Norm, Trajectory, c1_norm, linear_combination, make_trajectory, x_at, xdot_at
from .kernel import denominator, kernel_mass, kernel_value
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_singular, oracle_integrate
from .operator import EvaluationBreakdown, velocity, velocity_by_definition, velocity_grid
from .report import Check, VerificationReport
from .bounds import (
    BoundContext,
    bound_context,
    check_case_envelopes,
    check_weighted_bound,
    dependence_bound_constant,
    exponent_difference_extrema,
    gamma_extrema,
    weighted_constant,
)
from .analysis import (
    dependence_experiment,
    error_control,
    mean_value_point,
    midpoint_limit_check,
    recovery_curve,
    remainder,
)
from .inequalities import log_growth_bound, log_power_bound, power_linear_bound
