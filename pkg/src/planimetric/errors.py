"""Exception hierarchy. Every library failure derives from PlanimetricError."""


class PlanimetricError(Exception):
    """Base class for all library errors."""


class PointOutsideDomain(PlanimetricError, ValueError):
    pass


class DegenerateQuery(PlanimetricError, ValueError):
    """Point lies within 1e-14 of the boundary."""


class TooCoarse(PlanimetricError, ValueError):
    pass


class NoConvergence(PlanimetricError, ArithmeticError):
    pass


class InvalidMap(PlanimetricError, ValueError):
    """Conformal coefficients do not define an injective map of the closed disc."""


class IllConditioned(PlanimetricError, ArithmeticError):
    pass


class TailTooLarge(PlanimetricError, ArithmeticError):
    pass


class StencilOutsideDomain(PlanimetricError, ValueError):
    pass


class CoincidentPoints(PlanimetricError, ValueError):
    pass


class PointsTooCloseToBoundary(PlanimetricError, ValueError):
    pass


class NoPath(PlanimetricError, RuntimeError):
    pass


class OrbitTruncationUnsafe(PlanimetricError, RuntimeError):
    pass


class UnsupportedDomain(PlanimetricError, TypeError):
    pass


class NotNested(PlanimetricError, ValueError):
    pass


class MetricEvaluationFailed(PlanimetricError, ArithmeticError):
    pass


class InvalidDomainSpec(PlanimetricError, ValueError):
    pass
