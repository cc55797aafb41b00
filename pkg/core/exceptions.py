"""
Typed failures shared by every app.

Management commands map them to exit codes (see runs.pipeline.EXIT_CODES).
"""


class Choreo2cError(Exception):
    """Base class for every failure raised by the solver."""


class DomainError(Choreo2cError, ValueError):
    """An argument lies outside the domain of a formula or an invariant is violated."""


class CollisionError(Choreo2cError):
    """A sampled separation fell below the collision floor (the action is +inf there)."""

    def __init__(self, message, separation=None, family=None):
        super().__init__(message)
        self.separation = separation
        self.family = family


class ConvergenceError(Choreo2cError):
    """An iterative method exhausted its budget before reaching tolerance."""

    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class StalledError(Choreo2cError):
    """The line search could not find an admissible decreasing step."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DegenerateError(Choreo2cError):
    """Sampled points do not span enough dimensions for a fit."""
