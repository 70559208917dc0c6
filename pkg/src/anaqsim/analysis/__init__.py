"""Error rates, Taylor error terms, closed forms, bounds and step optimisation."""
from .closed_form import (
    CLOSED_FORM_TERMS,
    analytic_error_operator,
    error_norm_bound,
    ideal_rotation,
    pulse_magnus_term,
    reduce_product,
    verify_pulse_magnus,
)
from .floquet import e_vector, magnus_omega2_c1
from .optimize import (
    BoundReport,
    StepResult,
    analytic_bound,
    closed_form_t_star,
    golden_section,
    numeric_t_star,
    optimal_step,
    sweep_step,
)
from .rates import error_rate, multi_step_delta, step_error
from .taylor import ErrorTermId, leading_error_monomials, taylor_error_term

__all__ = [
    "BoundReport",
    "CLOSED_FORM_TERMS",
    "ErrorTermId",
    "StepResult",
    "analytic_bound",
    "analytic_error_operator",
    "closed_form_t_star",
    "e_vector",
    "error_norm_bound",
    "error_rate",
    "golden_section",
    "ideal_rotation",
    "leading_error_monomials",
    "magnus_omega2_c1",
    "multi_step_delta",
    "numeric_t_star",
    "optimal_step",
    "pulse_magnus_term",
    "reduce_product",
    "step_error",
    "sweep_step",
    "taylor_error_term",
    "verify_pulse_magnus",
]
