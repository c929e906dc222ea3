"""Exception types shared across the package."""


class PencilError(ValueError):
    """Input does not define the hyperbolic pencil configuration required."""

    kind = "invalid_pencil"


class NotInPencil(PencilError):
    kind = "not_in_pencil"


class IntersectingCircles(PencilError):
    kind = "intersecting"


class ConcentricCircles(PencilError):
    """Concentric pair: k = 0, the maps degenerate to rotations."""

    kind = "concentric"


class TangentPencil(PencilError):
    """Internally tangent pair; handled by the A_1 maps.

    ``alpha`` is the A_1 parameter of the inner circle in the canonical
    frame (tangency point at (-1, 0)).
    """

    kind = "tangent_pencil"

    def __init__(self, message: str, alpha: float | None = None):
        super().__init__(message)
        self.alpha = alpha


class ClosureInconsistency(ArithmeticError):
    """Analytic and empirical closure verdicts disagree."""

    kind = "closure_inconsistency"
