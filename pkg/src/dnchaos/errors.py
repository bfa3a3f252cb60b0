"""Exception hierarchy shared by all modules."""


class DnChaosError(Exception):
    """Base class for library errors."""


class InvalidInputError(DnChaosError, ValueError):
    """Malformed argument (empty coefficients, bad interval, p < 1, ...)."""


class DomainError(DnChaosError, ValueError):
    """Evaluation point outside the interval."""


class IncompatibleError(DnChaosError, ValueError):
    """Operands live on different intervals or over different fields."""


class ApproximationError(DnChaosError, ArithmeticError):
    """Adaptive construction did not converge or is not representable."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class CapacityError(DnChaosError, ArithmeticError):
    """A requested construction needs more degree than the ceiling allows."""


class ConfigError(InvalidInputError):
    """Invalid suite configuration."""
