"""Exception hierarchy for the shuffle-algebra library."""


class ShuffleError(Exception):
    """Base class for all library errors."""


class NotPrime(ShuffleError):
    pass


class NotDivisible(ShuffleError):
    pass


class ModulusMismatch(ShuffleError):
    pass


class WrongModulus(ShuffleError):
    pass


class NonInvertibleConstantTerm(ShuffleError):
    pass


class BadConstantTerm(ShuffleError):
    pass


class NonConvergence(ShuffleError):
    """Fixed-point iteration budget exhausted; signals a bug, not a math failure."""


class DivisionByZeroPoly(ShuffleError):
    pass


class NonUnitDenominator(ShuffleError):
    pass


class ZeroFraction(ShuffleError):
    pass


class OrderTooSmall(ShuffleError):
    pass


class BadShift(ShuffleError):
    pass


class Unsaturated(ShuffleError):
    """A dimension estimate did not saturate, so a bound check is inconclusive."""


class ShapeMismatch(ShuffleError):
    pass


class SingularMatrix(ShuffleError):
    pass


class OrderExhausted(ShuffleError):
    pass


class CapExceeded(ShuffleError):
    pass


class ParseError(ShuffleError):
    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position
