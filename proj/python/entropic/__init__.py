"""Conjugation of probability measures, Dirichlet-Ferguson sampling and entropic measures."""

from ._core import (
    ConfigError,
    Domain,
    DomainError,
    InputError,
    Measure,
    PreconditionError,
    SolverError,
    UnsupportedError,
    c_transform,
    conjugate_1d,
    conjugate_2d,
    dirichlet_marginal_logdensity,
    entropy_duality_gap,
    grid_nodes,
    involution_residual,
    legendre_fenchel,
    relative_entropy,
    reverse_entropy,
    run_criterion,
    sample_dirichlet_ferguson,
    sample_entropic,
    sample_stick_breaking,
    semidiscrete_weights,
    wasserstein_1d,
)

__all__ = [
    "ConfigError",
    "Domain",
    "DomainError",
    "InputError",
    "Measure",
    "PreconditionError",
    "SolverError",
    "UnsupportedError",
    "c_transform",
    "conjugate_1d",
    "conjugate_2d",
    "dirichlet_marginal_logdensity",
    "entropy_duality_gap",
    "grid_nodes",
    "involution_residual",
    "legendre_fenchel",
    "relative_entropy",
    "reverse_entropy",
    "run_criterion",
    "sample_dirichlet_ferguson",
    "sample_entropic",
    "sample_stick_breaking",
    "semidiscrete_weights",
    "wasserstein_1d",
]
