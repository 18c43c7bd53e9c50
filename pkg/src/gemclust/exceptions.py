"""Exception types shared across the package.

The CLI maps these onto process exit codes: invalid input -> 1,
numeric failure -> 2, IO failure -> 3.
"""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class DataFormatError(InvalidInputError):
    """A data file could not be parsed; message carries the line number."""


class NumericError(RuntimeError):
    """A numerical routine failed to produce a usable result."""


class DegenerateProblemError(NumericError):
    """The problem instance is degenerate (e.g. a vanishing denominator)."""
