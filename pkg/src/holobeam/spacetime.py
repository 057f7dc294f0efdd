"""Real and complex spacetime points, cone/tube predicates, complex distance.

Units: wave speed is 1, so lengths and times share a unit. Complex points use
the convention ``z = x - iy`` (past tube) or ``z = x + iy`` (future tube), with
``tau = t - is`` or ``t + is`` respectively.
"""

from dataclasses import dataclass

import numpy as np

from holobeam import kernels
from holobeam.errors import DegenerateDiskError, HolobeamError


def _vec3(v, name):
    arr = np.array(v, dtype=np.float64).reshape(-1)
    if arr.shape != (3,):
        raise HolobeamError(f"{name} must be a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise HolobeamError(f"{name} must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class RealSpacetimePoint:
    """A point ``(x, t)`` in real spacetime."""

    x: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "x", _vec3(self.x, "x"))
        t = float(self.t)
        if not np.isfinite(t):
            raise HolobeamError("t must be finite")
        object.__setattr__(self, "t", t)

    def __sub__(self, other):
        return RealSpacetimePoint(self.x - other.x, self.t - other.t)

    def __eq__(self, other):
        if not isinstance(other, RealSpacetimePoint):
            return NotImplemented
        return bool(np.array_equal(self.x, other.x) and self.t == other.t)

    def as_array(self):
        return np.append(self.x, self.t)


@dataclass(frozen=True, eq=False)
class SpacetimeDirection:
    """An imaginary part ``(y, s)``.

    ``y`` sets the dish radius ``a = |y|`` and its orientation, ``s`` the
    duration parameter. Cone membership is not enforced here; use
    :func:`in_future_cone`.
    """

    y: np.ndarray
    s: float

    def __post_init__(self):
        object.__setattr__(self, "y", _vec3(self.y, "y"))
        s = float(self.s)
        if not np.isfinite(s):
            raise HolobeamError("s must be finite")
        object.__setattr__(self, "s", s)

    @property
    def a(self):
        return float(np.linalg.norm(self.y))

    def __add__(self, other):
        return SpacetimeDirection(self.y + other.y, self.s + other.s)

    def __neg__(self):
        return SpacetimeDirection(-self.y, -self.s)

    def __eq__(self, other):
        if not isinstance(other, SpacetimeDirection):
            return NotImplemented
        return bool(np.array_equal(self.y, other.y) and self.s == other.s)

    def as_array(self):
        return np.append(self.y, self.s)


@dataclass(frozen=True, eq=False)
class ComplexSpacetimePoint:
    """A complex spacetime point ``(z, tau)``."""

    z: np.ndarray
    tau: complex

    def __post_init__(self):
        z = np.array(self.z, dtype=np.complex128).reshape(-1)
        if z.shape != (3,):
            raise HolobeamError(f"z must be a complex 3-vector, got shape {z.shape}")
        z.flags.writeable = False
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "tau", complex(self.tau))

    @classmethod
    def from_parts(cls, x, y, sign=-1):
        """Build ``x - iy`` (``sign=-1``, past tube side) or ``x + iy`` (``sign=+1``)."""
        if sign not in (-1, 1):
            raise HolobeamError("sign must be +1 or -1")
        return cls(x.x + sign * 1j * y.y, complex(x.t, sign * y.s))

    @property
    def real(self):
        return RealSpacetimePoint(self.z.real, self.tau.real)

    @property
    def imag(self):
        return SpacetimeDirection(self.z.imag, self.tau.imag)


@dataclass(frozen=True)
class SourceDisk:
    """Branch disk of the complex distance: radius ``a``, normal ``y/a``."""

    center: tuple
    radius: float
    normal: tuple

    def distance_to(self, x):
        """Euclidean distance from the real point(s) ``x`` to the disk."""
        x = np.asarray(x, dtype=np.float64) - np.asarray(self.center)
        return distance_to_branch_set(x, self.radius * np.asarray(self.normal))


def distance_to_branch_set(x, y):
    """Distance from real point(s) ``x`` to the source disk of ``y`` (the origin if ``y = 0``)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    a = float(np.linalg.norm(y))
    if a == 0.0:
        return np.linalg.norm(x, axis=-1)
    n = y / a
    h = x @ n
    rho = np.linalg.norm(x - h[..., None] * n, axis=-1)
    return np.hypot(np.maximum(rho - a, 0.0), h)


def in_future_cone(y):
    """``True`` iff ``|y| < s`` (strict, boundary excluded)."""
    return bool(y.a < y.s)


def in_past_tube(z):
    """``True`` iff ``z = x - iy`` with ``y`` in the open future cone."""
    return in_future_cone(-z.imag)


def in_future_tube(z):
    """``True`` iff ``z = x + iy`` with ``y`` in the open future cone."""
    return in_future_cone(z.imag)


def complex_distance(z):
    """Complex distance ``sqrt(z . z)`` on the branch ``Re >= 0``.

    ``z`` is a complex 3-vector or an array of them with shape ``(..., 3)``.
    The product is bilinear (no conjugation). For ``z = x - iy`` the result
    squares to ``r**2 - a**2 - 2i a r cos(theta)`` and tends to ``|x|`` as
    ``y -> 0``.

    On the source disk (``x . y = 0``, ``|x| <= |y|``) the square is real
    and non-positive; the returned value is the one-sided limit from the
    side ``y`` points to, ``-i sqrt(a**2 - r**2)``. Crossing the disk flips
    the sign of the imaginary part.

    Returns a Python ``complex`` for a single vector, otherwise an array of
    shape ``z.shape[:-1]``.
    """
    z = np.asarray(z, dtype=np.complex128)
    if z.shape[-1:] != (3,):
        raise HolobeamError(f"z must have trailing dimension 3, got shape {z.shape}")
    out = kernels.complex_distance_batch(z.real, z.imag)
    if z.ndim == 1:
        return complex(out[0])
    return out.reshape(z.shape[:-1])


def source_disk(y):
    """The branch disk ``S(y)``: radius ``|y|``, normal ``y/|y|``, centered at 0.

    The disk lies in the plane orthogonal to ``y``, where ``z . z`` is real
    and non-positive.
    """
    a = y.a
    if a == 0.0:
        raise DegenerateDiskError("source disk is undefined for y = 0")
    return SourceDisk((0.0, 0.0, 0.0), a, tuple(float(c) for c in y.y / a))
