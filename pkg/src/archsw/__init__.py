"""Numerical and exact verification of the Archimedean local arithmetic
Siegel-Weil identities: Whittaker derivatives against Green current integrals."""
from . import combinatorial, delta, geometry, numerics, special, whittaker
from .errors import (ArchSWError, BudgetExceeded, DomainError, IndexOutOfRange, NonConvergence,
                     NonFiniteEvaluation, OnCycle, PoleAtNonPositiveInteger, PoleHit,
                     SingularBoundary)
from .numerics import DEFAULT_SPEC, IntegrationResult, QuadratureSpec

__all__ = [
    "combinatorial", "delta", "geometry", "numerics", "special", "whittaker",
    "ArchSWError", "BudgetExceeded", "DomainError", "IndexOutOfRange", "NonConvergence",
    "NonFiniteEvaluation", "OnCycle", "PoleAtNonPositiveInteger", "PoleHit", "SingularBoundary",
    "DEFAULT_SPEC", "IntegrationResult", "QuadratureSpec",
]
__version__ = "0.1.0"
