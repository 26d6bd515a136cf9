"""Digital-net quasi-Monte Carlo point sequences on a triangle."""

from triqmc._core import (
    builtin_function_ids,
    convergence_study,
    monomial_integral,
    points,
    qmc_integrate,
    quality,
    run_verification,
    walsh_coefficient,
)

__all__ = [
    "builtin_function_ids",
    "convergence_study",
    "monomial_integral",
    "points",
    "qmc_integrate",
    "quality",
    "run_verification",
    "walsh_coefficient",
]
