"""Exception hierarchy and warning categories shared across the package."""


class FracsumError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FracsumError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class OutOfRangeError(DomainError):
    """An index or configuration parameter is outside its supported range."""


class PoleError(DomainError):
    """Evaluation was requested exactly at a pole."""


class ConvergenceError(FracsumError, ArithmeticError):
    """A series tail, limit, or iteration failed to reach its tolerance."""


class CancellationWarning(RuntimeWarning):
    """Evaluation close to a pole; the result may lose digits to cancellation."""
