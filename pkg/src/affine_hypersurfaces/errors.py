"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`HypersurfaceError`, so callers (and the CLI) can map whole classes of
failure to exit codes without catching unrelated bugs.
"""


class HypersurfaceError(Exception):
    """Base class for all library errors."""


class SingularMatrix(HypersurfaceError, ValueError):
    pass


class DimensionTooSmall(HypersurfaceError, ValueError):
    pass


class DimensionTooLarge(HypersurfaceError, ValueError):
    pass


class DimensionMismatch(HypersurfaceError, ValueError):
    pass


class InvalidProfile(HypersurfaceError, ValueError):
    pass


class DomainSingularity(HypersurfaceError, ArithmeticError):
    """A profile was evaluated at (or too close to) a point where it blows up."""


class AmbientMismatch(HypersurfaceError, ValueError):
    """A quantity was requested for the wrong ambient space."""


class EmptyGrid(HypersurfaceError, ValueError):
    pass


class ConvergenceError(HypersurfaceError, ArithmeticError):
    pass


class ConstructionError(HypersurfaceError, ValueError):
    """Base for constructor precondition failures."""


class ZeroTargetCurvature(ConstructionError):
    pass


class ZeroCoefficient(ConstructionError):
    pass


class CoefficientSumMismatch(ConstructionError):
    pass


class ZeroLambda(ConstructionError):
    pass


class IndexOutOfRange(ConstructionError, IndexError):
    pass


class SpecParseError(HypersurfaceError, ValueError):
    """Malformed surface specification document.

    ``path`` addresses the offending field, e.g. ``profiles[1].c``.
    """

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)
