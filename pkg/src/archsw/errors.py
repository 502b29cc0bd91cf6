"""Exception types shared across the package."""


class ArchSWError(Exception):
    """Base class for every error raised by this package."""


class NonConvergence(ArchSWError):
    """Quadrature budget exhausted before the error estimate met tolerance."""

    def __init__(self, message, result=None, worst_panel=None):
        super().__init__(message)
        self.result = result
        self.worst_panel = worst_panel


class NonFiniteEvaluation(ArchSWError):
    """An integrand or difference quotient produced NaN or inf."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class SingularBoundary(NonConvergence):
    """Disc integrand did not decay fast enough toward |z| = 1."""


class DomainError(ArchSWError, ValueError):
    pass


class PoleAtNonPositiveInteger(DomainError):
    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class PoleHit(ArchSWError, ZeroDivisionError):
    """Rational function evaluated at x = -a_i."""


class IndexOutOfRange(ArchSWError, IndexError):
    pass


class BudgetExceeded(ArchSWError):
    """Brute-force enumeration refused because the instance is too large."""


class OnCycle(ArchSWError):
    """Point lies on the special cycle D(x), where R(x, z) vanishes."""
