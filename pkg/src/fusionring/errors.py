"""Exception hierarchy for the fusion-ring workbench."""


class FusionRingError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(FusionRingError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateEntry(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


class ConvergenceFailure(FusionRingError):
    pass


class UncertifiableDimension(FusionRingError):
    pass


class DecompositionMismatch(FusionRingError):
    pass


class GradingInconsistent(FusionRingError):
    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)


class BudgetExceeded(FusionRingError):
    pass


class SearchBudgetExceeded(BudgetExceeded):
    pass


class UnknownPredicate(FusionRingError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown predicate"


class NonIntegralEntry(FusionRingError, ValueError):
    pass


class PreconditionError(FusionRingError, ValueError):
    pass


class InvalidSMatrix(FusionRingError, ValueError):
    pass
