"""Exception types raised by qlab."""


class QLabError(Exception):
    """Base class for all qlab errors."""


class ParameterError(QLabError, ValueError):
    """An argument is outside the domain an operation accepts."""


class DomainError(ParameterError):
    """A parameter violates a mathematical hypothesis (e.g. |a| < 1 for orthogonality)."""


class PoleError(QLabError, ZeroDivisionError):
    """A denominator product or factor vanishes."""


class TruncationError(QLabError, ArithmeticError):
    """A series or product did not converge within ``max_terms``.

    ``partial`` holds the partial value reached and ``terms`` the number of
    terms or factors used.
    """

    def __init__(self, message, partial=None, terms=None):
        super().__init__(message)
        self.partial = partial
        self.terms = terms


class SingularityError(QLabError, ArithmeticError):
    """An operator was evaluated at a point excluded by the singularity guard."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class TailBoundError(QLabError, ValueError):
    """A truncated expansion is too short for its tail bound; see ``suggested_n``."""

    def __init__(self, message, suggested_n=None):
        super().__init__(message)
        self.suggested_n = suggested_n
