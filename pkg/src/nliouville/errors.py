"""Exception hierarchy shared by every module."""


class LiouvilleError(Exception):
    """Base class for all errors raised by nliouville."""


class DomainError(LiouvilleError, ValueError):
    """An argument lies outside the domain of the operation."""


class EmptySetError(DomainError):
    """Requested superlevel set is empty (level at or above the maximum)."""


class UnsupportedError(LiouvilleError, NotImplementedError):
    """Dimension/center combination not covered by a deterministic rule."""


class PrecisionError(LiouvilleError, ArithmeticError):
    """Quadrature did not reach its target error within the refinement cap."""


class NumericError(LiouvilleError, ArithmeticError):
    """A root bracket or similar numeric safeguard failed."""


class TailDivergenceError(LiouvilleError, ArithmeticError):
    """Fitted far-field decay rate does not make the mass tail integrable."""

    def __init__(self, message, fitted_beta):
        super().__init__(message)
        self.fitted_beta = fitted_beta


class IntegrationError(LiouvilleError, RuntimeError):
    """Radial integration stopped early; ``last_radius`` is the last good node."""

    def __init__(self, message, last_radius):
        super().__init__(f"{message} (last good radius {last_radius:.17g})")
        self.last_radius = last_radius
