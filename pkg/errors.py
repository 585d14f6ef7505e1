"""
Exception hierarchy for the toolkit.

Library code raises these; only the command-line layer turns them into
structured reports (see models.RunError).
"""


class BergmanError(Exception):
    """Base class for every error raised by the toolkit."""


class PreconditionError(BergmanError, ValueError):
    """An operation was called outside its documented domain."""


class ConfigError(BergmanError):
    """Runtime configuration (environment or CLI flags) is invalid."""


class NumericalError(BergmanError):
    """A computation failed for numerical reasons."""


class SingularSystemError(NumericalError):
    """The interpolation matrix could not be inverted reliably."""


class DivergenceError(NumericalError):
    """An integral or an iteration diverged."""
