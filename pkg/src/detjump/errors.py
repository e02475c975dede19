"""Exception types shared across the package."""


class DetJumpError(Exception):
    """Base class for all package errors."""


class GasSpecError(DetJumpError, ValueError):
    """Malformed or invalid gas configuration."""


class DomainError(DetJumpError, ValueError):
    """Input outside the domain where the model is defined."""


class NumericalError(DetJumpError, RuntimeError):
    """Quadrature or root finding failed to converge.

    ``estimate`` carries the best value reached, when one exists.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
