"""Holomorphic Green functions of the wave equation and complex-source pulsed beams."""

__version__ = "0.1.0"

from holobeam.beam import (
    BeamGeometry,
    EmitterDish,
    ReceiverDish,
    combined_geometry,
    coupling,
    duration,
    emitted_field,
    far_zone_field,
    optimal_alignment,
    peak_coupling,
)
from holobeam.directivity import convexity_gap, directivity
from holobeam.errors import (
    BudgetExceededError,
    CoincidentCentersError,
    ConeViolationError,
    DegenerateDiskError,
    DomainError,
    HolobeamError,
    QuadratureResolutionWarning,
    SingularityError,
)
from holobeam.holomorphic import (
    cauchy_kernel,
    extended_coulomb,
    holomorphic_green,
    laplacian_residual,
    source_flux,
)
from holobeam.spacetime import (
    ComplexSpacetimePoint,
    RealSpacetimePoint,
    SourceDisk,
    SpacetimeDirection,
    complex_distance,
    in_future_cone,
    in_future_tube,
    in_past_tube,
    source_disk,
)
