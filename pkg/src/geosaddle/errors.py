"""Exception hierarchy shared across the package."""


class SaddleError(Exception):
    pass


class ExprSyntaxError(SaddleError, ValueError):
    """Malformed expression text.

    ``offset`` is a byte offset into the UTF-8 encoded input and ``expected``
    the set of token kinds that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        if self.expected:
            message = f"{message} (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(f"{message} at offset {offset}")


class UnknownFunction(ExprSyntaxError):
    pass


class NonIntegerExponent(ExprSyntaxError):
    pass


class DomainError(SaddleError, ArithmeticError):
    """Evaluation left the domain of definition (e.g. division by zero)."""


class NotPolynomial(SaddleError, TypeError):
    pass


class NondifferentiablePoint(SaddleError, ArithmeticError):
    """A kink (abs/min/max) sits too close to the evaluation point."""


class NotIndefinite(SaddleError, ValueError):
    pass


class ZeroDirection(SaddleError, ValueError):
    pass


class NotRegular(SaddleError, ValueError):
    pass


class DifferentCenters(SaddleError, ValueError):
    pass
