"""Exception hierarchy for pyFibCodes."""

from __future__ import annotations


class FibCodesError(Exception):
    """Base class for every error raised on purpose by pyFibCodes."""


class NotPrimeError(FibCodesError, ValueError):
    """The modulus is not a prime in the supported range."""


class ParameterError(FibCodesError, ValueError):
    """An argument lies outside its documented range."""


class ModulusMismatchError(FibCodesError, ValueError):
    """Operands live over different prime fields."""


class FieldDivisionError(FibCodesError, ZeroDivisionError):
    """Inverse, order or quotient of zero was requested."""


class DimensionMismatchError(FibCodesError, ValueError):
    """Matrix or vector shapes do not agree."""


class NotApplicableError(FibCodesError, ValueError):
    """The requested theorem, check or prediction does not cover this input."""


class NotCyclicGeneratorError(FibCodesError, ValueError):
    """The polynomial does not divide x^n - 1."""


class TooLargeError(FibCodesError, ValueError):
    """An exhaustive enumeration would exceed the configured cap."""


class InconsistentDistributionError(FibCodesError, ValueError):
    """A weight distribution does not match the code it claims to describe."""


class SchemeUndefinedError(FibCodesError, ValueError):
    """The Massey scheme cannot be set up on this dealing code."""


class UnauthorizedSetError(FibCodesError, PermissionError):
    """The participant set cannot recover the secret."""


class MissingShareError(FibCodesError, KeyError):
    """A participant in the access set has no share."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing share"


class ShareFileError(FibCodesError, ValueError):
    """A share file is malformed or cannot be written."""


class ConfigurationError(FibCodesError, ValueError):
    """An environment setting is invalid."""


class InvariantError(FibCodesError, RuntimeError):
    """An internal invariant was violated; this indicates a bug or a bad input."""
