"""Exception hierarchy shared by every module."""


class KHAError(Exception):
    """Base class for all engine errors."""


class ExprSyntaxError(KHAError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class UnknownSymbol(ExprSyntaxError):
    pass


class NonBinomialDenominator(ExprSyntaxError):
    pass


class DenominatorVanishes(KHAError):
    pass


class NonExpandableFactor(KHAError):
    pass


class PoleAtPEqualsQ(KHAError):
    pass


class NotSymmetric(KHAError):
    pass


class PotentialNotInvariant(KHAError):
    pass


class DegenerateWeight(KHAError):
    pass


class DimensionMismatch(KHAError):
    pass


class NonPolynomialProduct(KHAError):
    pass


class NotSymmetricElement(KHAError):
    pass


class TruncationExceeded(KHAError):
    pass


class PoleOnContour(KHAError):
    pass


class AmbiguousPoleOrder(KHAError):
    pass


class SpecError(KHAError):
    pass
