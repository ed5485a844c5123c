"""Energy-based discontinuous Galerkin solver for semilinear wave equations."""

from ._core import (
    ConfigError,
    Discretization,
    NumericalBreakdown,
    State,
    converge,
    evolve,
    pairwise_rate,
    problem_names,
    verify,
)

__all__ = [
    "ConfigError",
    "Discretization",
    "NumericalBreakdown",
    "State",
    "converge",
    "evolve",
    "pairwise_rate",
    "problem_names",
    "verify",
]
