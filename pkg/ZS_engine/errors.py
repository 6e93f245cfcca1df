"""
Exception hierarchy for the ZetaSurf engine

Input errors map to CLI exit code 2, numeric failures to exit code 1.
"""

from typing import Any


class ZetaSurfError(Exception):
    """Base class of every error raised by the engine"""

    exit_code = 1


class InputError(ZetaSurfError):
    """Invalid user input (surface, chart, grid or parameter)"""

    exit_code = 2


class NumericError(ZetaSurfError):
    """A computation could not reach its stated accuracy"""

    exit_code = 1


# ============================================================================
# Input errors
# ============================================================================


class MalformedInput(InputError):
    def __init__(self, field: str, reason: str):
        self.field = field
        super().__init__(f"Malformed input at '{field}': {reason}")


class InvalidLength(InputError):
    pass


class InvalidMatrix(InputError):
    pass


class NonHyperbolicElement(InputError):
    def __init__(self, word: str, trace: float):
        self.word = word
        self.trace = trace
        super().__init__(f"Word '{word}' is not hyperbolic (|trace| = {abs(trace):.15g} <= 2)")


class CutoffExceeded(InputError):
    pass


class InvalidR(InputError):
    pass


class SupportTouchesBoundary(InputError):
    pass


class InvalidConformalFactor(InputError):
    pass


class PoleAtNonpositiveInteger(InputError):
    pass


class DomainError(InputError):
    pass


class HadamardOriginError(InputError, ZeroDivisionError):
    pass


# ============================================================================
# Numeric errors
# ============================================================================


class EnumerationBudgetExceeded(NumericError):
    def __init__(self, message: str, partial: Any = None):
        self.partial = partial
        super().__init__(message)


class EmptySpectrum(NumericError):
    pass


class IncompleteSpectrum(NumericError):
    pass


class ConvergenceRegionError(NumericError):
    pass


class ZeroOfZeta(NumericError):
    def __init__(self, s: complex):
        self.s = s
        super().__init__(f"s = {s} is a zero of the zeta function (log value is -inf)")


class BoundaryZero(NumericError):
    def __init__(self, message: str, suggested_shift: float = 0.0):
        self.suggested_shift = suggested_shift
        super().__init__(message)


class NonConvergence(NumericError):
    pass


class PrecisionExhausted(NumericError):
    def __init__(self, message: str, partial: Any = None):
        self.partial = partial
        super().__init__(message)


class QuadratureFailure(NumericError):
    pass


class ExpansionMismatch(NumericError):
    pass


class RangeExceeded(NumericError):
    pass
