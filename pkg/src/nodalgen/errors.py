"""Exception taxonomy shared by all nodalgen modules."""


class NodalgenError(Exception):
    """Base class for every error raised by this package."""


# --- series arithmetic ------------------------------------------------------

class DivisionByZeroSeries(NodalgenError):
    pass


class NonInvertibleLeadingCoefficient(NodalgenError):
    pass


class PositiveValuationRequired(NodalgenError):
    pass


class UnitConstantTermRequired(NodalgenError):
    pass


class NegativeValuationUnsupported(NodalgenError):
    pass


class BaseValuationMustBeOne(NodalgenError):
    pass


class OutOfPrecision(NodalgenError):
    pass


# --- modular forms ----------------------------------------------------------

class OddWeightUnsupported(NodalgenError):
    pass


# --- polynomials ------------------------------------------------------------

class DuplicateAbscissa(NodalgenError):
    pass


class NonPolynomialResidual(NodalgenError):
    pass


# --- Severi recursion and cache ---------------------------------------------

class InvalidProfile(NodalgenError):
    pass


class IoFailure(NodalgenError):
    pass


class FormatVersionMismatch(NodalgenError):
    pass


class CacheConsistencyError(NodalgenError):
    """A write-once cache entry was asked to change its value."""


# --- fitting ----------------------------------------------------------------

class InsufficientDegrees(NodalgenError):
    pass


class InconsistentOverdetermination(NodalgenError):
    """An overdetermined fit produced two different answers.

    This always signals an upstream bug (or corrupted input data), never a
    tolerance issue: all arithmetic is exact.
    """


# --- surfaces / CLI ---------------------------------------------------------

class UnknownKind(NodalgenError):
    pass
