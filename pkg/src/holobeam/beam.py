"""Pulsed-beam emission, reception and emitter-receiver coupling.

An emitting dish is the complex point ``z_e = x_e + i y_e`` (future tube), a
receiving dish is ``z_r = x_r - i y_r`` (past tube). Their coupling is the
holomorphic Green function at ``z_r - z_e = x_r - x_e - i (y_r + y_e)``.

Sign convention for receivers: ``y_r`` points *into* the receiver, i.e. along
the direction the signal travels when it arrives. A receiver looking back at
an emitter located at ``x_e`` therefore has ``y_r`` parallel to ``x_r - x_e``.
"""

import math
from dataclasses import dataclass

import numpy as np

from holobeam import kernels
from holobeam.errors import CoincidentCentersError, ConeViolationError
from holobeam.holomorphic import DEFAULT_EPS, holomorphic_green
from holobeam.spacetime import (
    ComplexSpacetimePoint,
    RealSpacetimePoint,
    SpacetimeDirection,
    in_future_cone,
)


def _require_cone(y, what):
    if not in_future_cone(y):
        raise ConeViolationError(f"{what} must satisfy |y| < s, got |y|={y.a!r}, s={y.s!r}")


@dataclass(frozen=True)
class EmitterDish:
    center: RealSpacetimePoint
    extension: SpacetimeDirection

    def __post_init__(self):
        _require_cone(self.extension, "emitter extension")

    @property
    def z(self):
        return ComplexSpacetimePoint.from_parts(self.center, self.extension, sign=+1)


@dataclass(frozen=True)
class ReceiverDish:
    center: RealSpacetimePoint
    extension: SpacetimeDirection

    def __post_init__(self):
        _require_cone(self.extension, "receiver extension")

    @property
    def z(self):
        return ComplexSpacetimePoint.from_parts(self.center, self.extension, sign=-1)


@dataclass(frozen=True)
class BeamGeometry:
    """Scalars of an emitter/receiver pair.

    ``r`` center distance, ``t`` time offset, ``a`` combined radius
    ``|y_r + y_e|``, ``s`` combined duration parameter ``s_r + s_e``,
    ``theta`` angle between ``x_r - x_e`` and ``y_r + y_e``.
    """

    r: float
    t: float
    a: float
    s: float
    theta: float = 0.0

    def __post_init__(self):
        if not self.a < self.s:
            raise ConeViolationError(f"geometry needs a < s, got a={self.a!r}, s={self.s!r}")


def _angle(u, v):
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    # atan2 form stays accurate near 0 and pi
    return float(math.atan2(np.linalg.norm(np.cross(u, v)), float(np.dot(u, v))))


def emitted_field(e, x, eps=DEFAULT_EPS):
    """Field ``G(x - z_e)`` observed at the real spacetime point ``x``."""
    d = x - e.center
    z = ComplexSpacetimePoint.from_parts(d, e.extension, sign=-1)
    return holomorphic_green(z, eps=eps)


def duration(theta, a, s):
    """Pulse duration ``s - a cos(theta)``; positive on the cone ``0 <= a < s``."""
    if not (0.0 <= a < s):
        raise ConeViolationError(f"duration needs 0 <= a < s, got a={a!r}, s={s!r}")
    return s - a * math.cos(theta)


def far_zone_field(g):
    """Far-zone pulse ``1/(8 i pi^2 r) * 1/(t - r - i T(theta))``.

    Valid for ``r >> a``; the relative error against the exact field is of
    order ``a / r``.
    """
    if not g.r > 0.0:
        raise ConeViolationError("far-zone field needs r > 0")
    return complex(kernels.far_zone_batch(g.r, g.t, g.a, g.s, math.cos(g.theta)))


def coupling(e, rdish, eps=DEFAULT_EPS):
    """Coupling ``G(z_r - z_e)`` between an emitting and a receiving dish.

    Depends only on ``x_r - x_e`` and ``y_r + y_e``; the sum lies in the
    future cone whenever both extensions do.
    """
    d = rdish.center - e.center
    y = rdish.extension + e.extension
    z = ComplexSpacetimePoint.from_parts(d, y, sign=-1)
    return holomorphic_green(z, eps=eps)


def combined_geometry(e, rdish):
    d = rdish.center - e.center
    y = rdish.extension + e.extension
    return BeamGeometry(
        r=float(np.linalg.norm(d.x)),
        t=d.t,
        a=y.a,
        s=y.s,
        theta=_angle(d.x, y.y),
    )


def peak_coupling(r, a, s):
    """Coupling at the optimal configuration in the far zone: ``1/(8 pi^2 r (s - a))``."""
    if not (0.0 <= a < s):
        raise ConeViolationError(f"peak coupling needs 0 <= a < s, got a={a!r}, s={s!r}")
    if not r > 0.0:
        raise ConeViolationError("peak coupling needs r > 0")
    return 1.0 / (8.0 * math.pi**2 * r * (s - a))


def optimal_alignment(x_e, x_r, a_e, a_r, s_e, s_r):
    """Orientations and time offset that maximize far-zone coupling.

    Both dishes point along ``u = (x_r - x_e) / r``: the emitter toward the
    receiver and the receiver's ``y_r`` into itself, i.e. its aperture faces
    the emitter. The receiver is synchronized at ``t_r - t_e = r``.

    Returns ``(y_e, y_r, t)``.
    """
    x_e = np.asarray(x_e, dtype=np.float64)
    x_r = np.asarray(x_r, dtype=np.float64)
    d = x_r - x_e
    r = float(np.linalg.norm(d))
    if r == 0.0:
        raise CoincidentCentersError("emitter and receiver centers coincide")
    u = d / r
    y_e = SpacetimeDirection(a_e * u, s_e)
    y_r = SpacetimeDirection(a_r * u, s_r)
    _require_cone(y_e, "emitter extension")
    _require_cone(y_r, "receiver extension")
    return y_e, y_r, r
