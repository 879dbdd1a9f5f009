"""
Error types for fractalqm.

All library failures derive from FractalQMError so callers (the CLI in
particular) can separate usage problems from numerical failures.
"""


class FractalQMError(Exception):
    """Base class for fractalqm errors."""


class ParameterError(FractalQMError, ValueError):
    """An argument is outside the domain an operation accepts."""


class ComputationError(FractalQMError, ArithmeticError):
    """A numerical procedure could not produce a trustworthy value."""


class DerivativeUndefinedError(ComputationError):
    """The F^alpha-derivative does not exist at the requested point.

    Raised where the staircase is locally flat or the point lies outside the
    fractal set, instead of silently returning 0.
    """


class DataFileError(FractalQMError, OSError):
    """A data file is missing or does not have the expected layout."""
