"""Exception hierarchy. The CLI maps each branch to its own exit code."""


class SPSError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SPSError, ValueError):
    """A parameter or configuration value is outside its allowed domain."""


class NonPositiveRate(ValidationError):
    pass


class NegativeValue(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class NonPositiveWidth(ValidationError):
    pass


class StepTooLarge(ValidationError):
    pass


class NumericDomainError(SPSError, ArithmeticError):
    """The request is valid but the quantity asked for is undefined or unresolved."""


class ZeroCoupling(NumericDomainError):
    pass


class GridTooNarrow(NumericDomainError):
    pass


class GridTooCoarse(NumericDomainError):
    pass


class Multimodal(NumericDomainError):
    pass
