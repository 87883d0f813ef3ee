"""Lambda-lifted entropic risk measures on finite distributions."""

import json as _json

from ._core import (
    DomainError,
    Distribution,
    EvarSolution,
    InputError,
    LambdaFunction,
    LambdaRiskResult,
    LevarError,
    RobustResult,
    SolverError,
    evar,
    evar_dual_oracle,
    evar_objective,
    expected_shortfall,
    extended_ru,
    homogeneous_form_value,
    lambda_evar_dual_oracle,
    lambda_lift,
    lambda_lift_inf,
    mix,
    partial_moment,
    quantile,
    renyi_entropy,
    sandwich_check,
    t_lambda,
    wasserstein_distance,
    worst_case_mean_variance,
    worst_case_wasserstein,
)
from ._core import run_campaign as _run_campaign


def run_campaign(seed=1, cases=200, max_support=20, p_grid=(1.0, 2.0, 3.0)):
    """Runs the seeded property campaign and returns the report as a dict."""
    return _json.loads(_run_campaign(seed, cases, max_support, list(p_grid)))


__all__ = [name for name in dir() if not name.startswith("_")]
