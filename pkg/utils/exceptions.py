"""
Exception hierarchy for the kernel.

Each class carries the exit code the CLI uses when it escapes a command.
"""


class ParcatError(Exception):
    """Base class for all kernel errors."""
    exit_code = 1


class ParseError(ParcatError, ValueError):
    """Input text does not follow one of the documented formats."""
    exit_code = 2


class PreconditionError(ParcatError, ValueError):
    """An operation was called outside its documented range."""
    exit_code = 3


class ArityError(PreconditionError):
    """Arities (or coefficient rings) of composed morphisms do not match."""


class PolyDivisionError(ParcatError, ArithmeticError):
    """Division by a polynomial of positive degree was attempted."""


class SeriesInversionError(ParcatError, ArithmeticError):
    """The constant term of a truncated series is not invertible."""


class InterpolationError(ParcatError):
    """Interpolation of a morphism from Schur-Weyl matrices failed."""


class StabilizationError(ParcatError):
    """Kronecker coefficients did not agree at the two stabilization points."""
