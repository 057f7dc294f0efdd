"""Cauchy kernel, extended Coulomb potential, holomorphic Green function.

Also hosts the two numerical probes of the extended source distribution
(the Laplacian of the extended Coulomb potential): the outward flux through a
sphere enclosing the source disk and the finite-difference Laplacian residual
off the disk.
"""

import math
import warnings

import numpy as np

from holobeam import kernels
from holobeam.errors import DomainError, HolobeamError, QuadratureResolutionWarning, SingularityError
from holobeam.spacetime import ComplexSpacetimePoint, SpacetimeDirection, complex_distance, distance_to_branch_set

DEFAULT_EPS = 1e-12


def cauchy_kernel(tau):
    """Positive-frequency part of the delta function, ``1/(2 i pi tau)``.

    Defined for ``Im(tau) < 0`` only.
    """
    tau = complex(tau)
    if not tau.imag < 0.0:
        raise DomainError(f"Cauchy kernel needs Im(tau) < 0, got {tau!r}")
    return 1.0 / (2j * math.pi * tau)


def extended_coulomb(z, eps=DEFAULT_EPS):
    """``-1 / (4 pi rt(z))`` for a complex 3-vector ``z``.

    Raises SingularityError when ``|rt|`` falls below ``eps * max(1, |Im z|)``,
    i.e. on the rim of the source disk.
    """
    z = np.asarray(z, dtype=np.complex128)
    rt = complex_distance(z)
    scale = max(1.0, float(np.linalg.norm(z.imag)))
    if abs(rt) < eps * scale:
        raise SingularityError(f"complex distance vanishes at z={z}")
    return -1.0 / (4.0 * math.pi * rt)


def _coulomb_at(points, y):
    """Extended Coulomb potential at real points ``(N, 3)`` for fixed ``y``."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    zi = np.broadcast_to(-np.asarray(y, dtype=np.float64), points.shape)
    return -1.0 / (4.0 * math.pi * kernels.complex_distance_batch(points, zi))


def holomorphic_green(z, eps=DEFAULT_EPS, check_domain=True):
    """Holomorphic Green function ``1 / (8 i pi^2 rt (tau - rt))``.

    ``z`` is a :class:`ComplexSpacetimePoint`. The Cauchy kernel inside
    converges only when ``-Im(tau - rt) > 0``, which holds throughout the past
    tube; violations raise DomainError unless ``check_domain`` is False (the
    bare formula is then evaluated, which is what the reflection identity
    under conjugation needs). Poles at ``rt = 0`` and ``tau = rt`` raise
    SingularityError.
    """
    rt = complex_distance(z.z)
    tau = z.tau
    if check_domain and not (rt.imag - tau.imag) > 0.0:
        raise DomainError(
            f"holomorphic Green function needs s + Im(rt) > 0; got s={-tau.imag!r}, Im(rt)={rt.imag!r}"
        )
    scale = max(1.0, float(np.linalg.norm(z.z.imag)))
    if abs(rt) < eps * scale or abs(tau - rt) < eps * scale:
        raise SingularityError(f"Green function pole at z={z.z}, tau={tau}")
    return 1.0 / (8j * math.pi**2 * rt * (tau - rt))


def _sphere_rule(n):
    """Gauss-Legendre in cos(polar) times uniform azimuth: nodes (M, 3), weights (M,)."""
    mu, w_mu = np.polynomial.legendre.leggauss(n)
    n_phi = 2 * n
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    sin_pol = np.sqrt(1.0 - mu**2)
    nodes = np.stack(
        [
            np.outer(sin_pol, np.cos(phi)),
            np.outer(sin_pol, np.sin(phi)),
            np.repeat(mu[:, None], n_phi, axis=1),
        ],
        axis=-1,
    ).reshape(-1, 3)
    weights = np.repeat(w_mu * (2.0 * math.pi / n_phi), n_phi)
    return nodes, weights


def _flux(y, radius, n):
    normals, weights = _sphere_rule(n)
    h = 1e-5 * radius
    outer = _coulomb_at((radius + h) * normals, y)
    inner = _coulomb_at((radius - h) * normals, y)
    terms = weights * radius**2 * (outer - inner) / (2.0 * h)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def source_flux(y, radius, n_quadrature=32, tol=1e-3):
    """Outward flux of the gradient of the extended Coulomb potential.

    Integrates ``d(phi)/dn`` over the sphere of the given radius centered on
    the source disk, using a product rule with ``n_quadrature`` Gauss-Legendre
    nodes in the polar cosine and ``2 * n_quadrature`` azimuths, and a central
    difference with step ``1e-5 * radius`` for the normal derivative.

    The level ``n_quadrature // 2`` is also evaluated; a
    QuadratureResolutionWarning is issued if the two differ by more than
    ``tol``. Returns the ``n_quadrature`` value.
    """
    if not isinstance(y, SpacetimeDirection):
        y = SpacetimeDirection(y, 0.0)
    if not radius > y.a:
        raise HolobeamError(f"sphere radius {radius} must exceed the disk radius {y.a}")
    if n_quadrature < 16:
        raise HolobeamError("n_quadrature must be at least 16")
    fine = _flux(y.y, radius, n_quadrature)
    coarse = _flux(y.y, radius, n_quadrature // 2)
    if abs(fine - coarse) > tol:
        warnings.warn(
            f"flux levels {n_quadrature // 2} and {n_quadrature} differ by {abs(fine - coarse):.3g}",
            QuadratureResolutionWarning,
            stacklevel=2,
        )
    return fine


_STENCIL = np.array(
    [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
    dtype=np.float64,
)


def laplacian_residual(x, y, h):
    """7-point central-difference Laplacian of the extended Coulomb potential at ``x``.

    The potential is harmonic off the source disk, so the result is pure
    truncation error, ``O(h**2)``. ``x`` must be more than ``10 h`` from the disk.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if not distance_to_branch_set(x, y) > 10.0 * h:
        raise HolobeamError("laplacian_residual: point is within 10h of the source disk")
    pts = np.vstack([x, x + h * _STENCIL])
    phi = _coulomb_at(pts, y)
    return complex((phi[1:].sum() - 6.0 * phi[0]) / h**2)


def green_from_parts(x, t, y, s, eps=DEFAULT_EPS):
    """Shorthand for ``holomorphic_green(x - iy, t - is)`` from raw arrays."""
    z = ComplexSpacetimePoint(np.asarray(x, dtype=float) - 1j * np.asarray(y, dtype=float), complex(t, -s))
    return holomorphic_green(z, eps=eps)
