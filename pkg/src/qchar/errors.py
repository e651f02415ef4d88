"""Exception hierarchy shared by every qchar module."""


class QcharError(Exception):
    """Base class for all engine errors."""


class InvalidUnit(QcharError, ValueError):
    pass


class InvalidPrime(QcharError, ValueError):
    pass


class BackendMismatch(QcharError, ValueError):
    pass


class NoOrderings(QcharError, ValueError):
    pass


class AmbientMismatch(QcharError, ValueError):
    pass


class UnknownVariable(QcharError, KeyError):
    pass


class TruncationOverflow(QcharError, ValueError):
    pass


class UnsupportedBundle(QcharError, NotImplementedError):
    pass


class DerivationInconsistent(QcharError, ArithmeticError):
    pass


class ParityMismatch(QcharError, ArithmeticError):
    pass


class InvalidIndex(QcharError, ValueError):
    pass


class ProportionalityFailure(QcharError, ArithmeticError):
    pass


class NotInvertible(QcharError, ZeroDivisionError):
    pass


class UnknownSuite(QcharError, ValueError):
    pass


class ExpressionSyntaxError(QcharError, ValueError):
    """Malformed expression text; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset
