"""Exception hierarchy for matrealize."""


class MatrealizeError(Exception):
    """Base class for all errors raised by this package."""


# matroid construction / manipulation

class MatroidError(MatrealizeError, ValueError):
    pass


class EmptyBasisFamily(MatroidError):
    pass


class WrongCardinality(MatroidError):
    pass


class ExchangeViolation(MatroidError):
    def __init__(self, b1, b2, x):
        self.b1, self.b2, self.x = b1, b2, x
        super().__init__(
            f"basis exchange fails for B1={b1}, B2={b2}, x={x}: "
            f"no y in B2\\B1 makes (B1 - x) + y a basis"
        )


class OutOfRange(MatroidError):
    pass


class NotAPermutation(MatroidError):
    pass


# enumeration / catalogs

class CaseOutOfSupportedRange(MatrealizeError, ValueError):
    pass


class ParseError(MatrealizeError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ValidationError(MatrealizeError):
    pass


class ChecksumMismatch(MatrealizeError):
    pass


# frames

class AllZero(MatrealizeError, ValueError):
    pass


class ZeroLinePresent(MatrealizeError, ValueError):
    pass


# polynomials

class PolynomialError(MatrealizeError, ValueError):
    pass


class ExponentOverflow(PolynomialError):
    pass


class NotAQuadric(PolynomialError):
    pass


class ZeroPolynomial(PolynomialError):
    pass


# realization

class NotABasis(MatrealizeError, ValueError):
    pass


class ContradictionDetected(MatrealizeError):
    """The defining system of X_M is trivially inconsistent."""

    def __init__(self, subset, is_basis, minor):
        self.subset, self.is_basis, self.minor = subset, is_basis, minor
        if is_basis:
            why = "minor of a basis vanishes identically"
        else:
            why = f"minor of a non-basis is the nonzero constant {minor}"
        super().__init__(f"columns {subset}: {why}")


class RankDeficient(MatrealizeError, ValueError):
    pass
