"""Marginal VaR on the level sets of Archimedean copulas."""

from ._core import (
    ArgumentError,
    CopulaSpec,
    DiagnosticError,
    DimensionError,
    DomainError,
    EmptyLevelSetError,
    Error,
    Family,
    InfiniteGeneratorError,
    McStats,
    NumericalError,
    QuantileFn,
    RangeError,
    StudyError,
    VarResult,
    attainable_tau,
    beta_kernel,
    copula_cdf,
    empirical_kendall_tau,
    kendall_tau,
    kernel_mass,
    parse_family,
    phi,
    phi_inverse,
    phi_prime,
    run_cli,
    run_study,
    sample,
    theta_from_tau,
    var,
)

__version__ = "0.1.0"
