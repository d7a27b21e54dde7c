"""Exception types raised by the package."""


class DenseCodingError(Exception):
    """Base class for all errors raised here."""


class NotHermitian(DenseCodingError, ValueError):
    pass


class NoConvergence(DenseCodingError, RuntimeError):
    pass


class DimensionMismatch(DenseCodingError, ValueError):
    pass


class ResultDimUnsupported(DenseCodingError, ValueError):
    pass


class DomainError(DenseCodingError, ValueError):
    pass


class BadNormalization(DenseCodingError, ValueError):
    pass


class NegativeCoefficient(DenseCodingError, ValueError):
    pass


class InvalidPermutation(DenseCodingError, ValueError):
    pass


class ParseError(DenseCodingError, ValueError):
    pass


class NotPSD(DenseCodingError, ValueError):
    pass


class NotPure(DenseCodingError, ValueError):
    pass


class OptimizerFailure(DenseCodingError, RuntimeError):
    pass
