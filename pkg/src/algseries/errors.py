"""Exception hierarchy shared by every module of the package."""


class AlgSeriesError(Exception):
    """Base class for all package errors."""


# field towers
class DuplicateGenerator(AlgSeriesError):
    pass


class NonPrimeCharacteristic(AlgSeriesError):
    pass


class NotMonic(AlgSeriesError):
    pass


class BadInseparableShape(AlgSeriesError):
    pass


class NotSeparable(AlgSeriesError):
    pass


class ReducibleWitness(AlgSeriesError):
    """A nontrivial factor (or root) of a proposed minimal polynomial was found."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class IrreducibilityUnverified(AlgSeriesError):
    """Degree too large for the built-in checks and no declaration was supplied."""


class RebasingFailed(AlgSeriesError):
    pass


# series
class InfiniteTruncation(AlgSeriesError):
    pass


class RamifiedRoot(AlgSeriesError):
    pass


# algebraicity
class ConjugatesUnavailable(AlgSeriesError):
    pass


class NotPurelyInseparable(AlgSeriesError):
    pass


# blowups
class BudgetTooSmall(AlgSeriesError):
    pass


class OracleStuck(AlgSeriesError):
    pass


class NoPowerSeriesBranch(AlgSeriesError):
    pass


class LambdaNotMinimal(AlgSeriesError):
    pass


# valuations
class ValueExceedsBudget(AlgSeriesError):
    def __init__(self, message, budget=None):
        super().__init__(message)
        self.budget = budget


class NotApplicable(AlgSeriesError):
    pass


# input handling
class ParseError(AlgSeriesError):
    pass


class ValidationError(AlgSeriesError):
    pass
