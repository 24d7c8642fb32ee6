"""Exception types shared across the package."""


class SpectralPatternError(Exception):
    """Base class for all package errors."""


class ContextMismatch(SpectralPatternError, ValueError):
    pass


class MissingAssignment(SpectralPatternError, KeyError):
    pass


class ZeroPolynomial(SpectralPatternError, ValueError):
    pass


class ZeroDivisor(SpectralPatternError, ZeroDivisionError):
    pass


class NotDivisible(SpectralPatternError, ArithmeticError):
    """Definite negative answer from :func:`exact_div`."""


class EmptyList(SpectralPatternError, ValueError):
    pass


class ZeroInput(SpectralPatternError, ValueError):
    pass


class DimensionTooLarge(SpectralPatternError, ValueError):
    pass


class DimensionMismatch(SpectralPatternError, ValueError):
    pass


class ZeroParameter(SpectralPatternError, ValueError):
    def __init__(self, index: int):
        super().__init__(f"x{index} must be nonzero")
        self.index = index


class WrongPattern(SpectralPatternError, ValueError):
    pass


class ZeroChainEntry(WrongPattern):
    pass


class ZeroScale(SpectralPatternError, ValueError):
    pass


class CertificateFailed(SpectralPatternError, AssertionError):
    pass


class NotTriangular(SpectralPatternError, RuntimeError):
    pass


class Unrealizable(SpectralPatternError):
    """A target polynomial or spectrum could not be realized; ``reason`` says why."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class WrongArity(SpectralPatternError, ValueError):
    pass


class OddCardinality(SpectralPatternError, ValueError):
    pass


class BadCardinality(SpectralPatternError, ValueError):
    pass


class SelectionFailed(SpectralPatternError):
    def __init__(self, tried: int, detail: str = ""):
        msg = f"no realizable 8-subset found after {tried} candidates"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.tried = tried
