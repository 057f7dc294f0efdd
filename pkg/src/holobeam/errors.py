"""Exception and warning types raised by holobeam."""


class HolobeamError(ValueError):
    """Base class for all validation and domain errors."""


class DomainError(HolobeamError):
    """Argument lies outside the domain where a kernel converges."""


class SingularityError(HolobeamError):
    """Evaluation point is within epsilon of a pole of the kernel."""


class ConeViolationError(HolobeamError):
    """A spacetime direction is not inside the open future cone."""


class DegenerateDiskError(HolobeamError):
    """Source disk requested for a zero spatial extension."""


class CoincidentCentersError(HolobeamError):
    """Emitter and receiver centers coincide, so no axis is defined."""


class BudgetExceededError(HolobeamError):
    """Grid would exceed the configured sample budget."""


class QuadratureResolutionWarning(UserWarning):
    """Two quadrature refinement levels disagree by more than the tolerance."""
