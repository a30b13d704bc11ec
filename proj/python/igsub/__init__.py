"""Incomplete-gamma subordinators and the Poisson processes they time-change."""

from ._core import (
    DomainError,
    ProcessSpec,
    SubordinatorSpec,
    __version__,
    closed_form_pmf,
    correlation,
    fractional_moment,
    gamma_fn,
    lower_incomplete_gamma,
    moments,
    pmf,
    pmf_range,
    process_laplace_exponent,
    process_pgf,
    regularized_incomplete_beta,
    ruin_zero_capital,
    simulate_path,
    tempering_fn_derivative,
    transition_row,
    upper_incomplete_gamma,
)

__all__ = [
    "DomainError",
    "ProcessSpec",
    "SubordinatorSpec",
    "closed_form_pmf",
    "correlation",
    "fractional_moment",
    "gamma_fn",
    "lower_incomplete_gamma",
    "moments",
    "pmf",
    "pmf_range",
    "process_laplace_exponent",
    "process_pgf",
    "regularized_incomplete_beta",
    "ruin_zero_capital",
    "simulate_path",
    "tempering_fn_derivative",
    "transition_row",
    "upper_incomplete_gamma",
]
