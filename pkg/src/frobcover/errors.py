"""Exception hierarchy shared by every module of the package."""


class FrobError(ValueError):
    """Base class for all errors raised by frobcover."""


# frobenius
class NotCoprime(FrobError):
    pass


class NotStrictlyIncreasing(FrobError):
    pass


class TooFewElements(FrobError):
    pass


class NonPositiveElement(FrobError):
    pass


class BudgetExceeded(FrobError):
    pass


class DimensionTooSmall(FrobError):
    pass


# lattice
class RankDeficient(FrobError):
    pass


class DimensionMismatch(FrobError):
    pass


class NonPositiveScale(FrobError):
    pass


# covering
class DegenerateSimplex(FrobError):
    pass


class UnboundedEnumeration(FrobError):
    pass


class ToleranceTooSmall(FrobError):
    pass


# construction
class AlphaOutOfRange(FrobError):
    pass


class NonIntegerCoefficient(FrobError):
    pass


class CommonFactorFound(FrobError):
    pass


class OrderingFailed(FrobError):
    pass


class GcdNotOne(FrobError):
    pass


class ConstructionCheckFailed(FrobError):
    """The tuple failed the congruence or determinant self-check."""


class InsufficientSequence(FrobError):
    pass


# harness
class InvalidAlpha(FrobError):
    pass


class BudgetExhausted(FrobError):
    """Search budget ran out; ``best`` carries the best attempt seen, if any."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class CheckFailed(FrobError):
    """A result failed an inequality that must hold."""
