"""
Exception hierarchy for hardy-sbf.

Command handlers map ConfigurationError to exit code 2 and NumericalError to
exit code 3.
"""


class HardySBFError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ConfigurationError(HardySBFError):
    """Invalid experiment configuration or command-line input."""

    exit_code = 2


class DomainError(HardySBFError, ValueError):
    """A precondition on the arguments of an operation is violated."""

    exit_code = 2


class NumericalError(HardySBFError, ArithmeticError):
    """A numerical procedure failed to deliver its certified result."""

    exit_code = 3


class IllConditionedError(NumericalError):
    """Factorization failed after exhausting the jitter ladder."""


class MeshTooCoarseError(NumericalError):
    """Positive cubature weights of the requested degree could not be found."""


class ConvergenceError(NumericalError):
    """An iterative or boundary-fitting procedure did not meet its tolerance."""
