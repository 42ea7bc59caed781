"""Exception hierarchy shared by the counting, saddle and sweep layers."""


class PartasymError(Exception):
    """Base class for all errors raised by this package."""


class PartitionArgumentError(PartasymError, ValueError):
    """An argument is outside the mathematical domain (negative count, bad v, ...)."""


class FeasibilityError(PartasymError, ValueError):
    """The (E, N, B) query lies outside the region where the saddle exists."""


class SaddleNumericalError(PartasymError, ArithmeticError):
    """The root finder could not bracket or converge on the saddle equation."""


class ValidityError(PartasymError, ArithmeticError):
    """The Gaussian prefactor degenerates (non-positive Hessian or radicand)."""


class ConfigError(PartasymError, ValueError):
    """A sweep specification is malformed."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
