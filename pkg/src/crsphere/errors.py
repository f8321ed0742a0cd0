"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DomainError(GeometryError):
    """A point is not on the unit 3-sphere."""


class DimensionError(GeometryError):
    """Vectors of different lengths were combined."""


class InvariantError(GeometryError):
    """A matrix or lift violates a required invariant (symmetry, rank, norm)."""

    def __init__(self, message: str, defect: float | None = None):
        super().__init__(message)
        self.defect = defect


class ImmersionError(GeometryError):
    """The lift does not define an immersion of S^3 (tangent rank < 3)."""


class EquivarianceError(GeometryError):
    """Quantities that must be constant vary across sample points."""

    def __init__(self, message: str, deviation: float):
        super().__init__(message)
        self.deviation = deviation


class AlignmentError(GeometryError):
    """The Kähler-form endomorphism has rank other than 0 or 2."""


class NotCRError(GeometryError):
    """An operation that needs a CR-type immersion got something else."""


class ParameterError(GeometryError):
    """Family parameters out of range (k > l >= 0, 0 < t < pi/2, k <= 30)."""
