"""Exception hierarchy shared across the package."""


class MeanIneqError(Exception):
    """Base class for all package errors."""


class DomainError(MeanIneqError, ValueError):
    """Input outside the domain of a kernel (non-positive or non-finite)."""


class KernelParseError(MeanIneqError, ValueError):
    """A kernel name could not be parsed."""


class DistributionError(MeanIneqError, ValueError):
    """Base class for probability-vector validation failures."""


class NonPositiveEntry(DistributionError):
    pass


class SumNotOne(DistributionError):
    def __init__(self, deviation):
        self.deviation = deviation
        super().__init__(f"probabilities sum to 1{deviation:+.3e}")


class TooShort(DistributionError):
    pass


class LengthMismatch(DistributionError):
    pass


class AlgebraError(MeanIneqError, ArithmeticError):
    """Base class for exact-algebra failures."""


class NotDivisible(AlgebraError):
    def __init__(self, message, remainder=None):
        self.remainder = remainder
        super().__init__(message)


class NoProgress(AlgebraError):
    pass


class ZeroPolynomial(AlgebraError):
    pass


class UnsupportedKernel(AlgebraError):
    pass


class UnsupportedParam(AlgebraError):
    pass


class GrammarError(MeanIneqError, ValueError):
    """Syntax error in a polynomial / radical literal."""

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        # literals are single-line; column is 1-based
        super().__init__(f"{message} at column {pos + 1}")


class CertificateFormatError(MeanIneqError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
