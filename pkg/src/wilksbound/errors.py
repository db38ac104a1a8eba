"""Exception hierarchy.

Every error raised by the package derives from :class:`WilksBoundError`,
itself a ``ValueError``, so callers can catch domain problems in one place.
The CLI maps these to exit status 1 and reports the class name.
"""


class WilksBoundError(ValueError):
    """Base class for all domain errors."""


class NonPositiveProbability(WilksBoundError):
    pass


class NotNormalized(WilksBoundError):
    pass


class EigenFailure(WilksBoundError):
    pass


class SingularEmpiricalInfo(WilksBoundError):
    pass


class PreconditionViolated(WilksBoundError):
    pass


class DomainError(WilksBoundError):
    pass


class DegenerateDeltaS(WilksBoundError):
    pass


class ConditionViolated(WilksBoundError):
    pass


class InfeasibleGrid(WilksBoundError):
    pass


class TooLarge(WilksBoundError):
    pass
