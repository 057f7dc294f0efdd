"""Independent reference computations used by the test suite and ``verify``.

None of these share code paths with the quantities they check: the flux
oracle integrates the analytic gradient with adaptive quadrature, and the
orientation scan is a brute-force search over an icosphere.
"""

import math

import numpy as np
from scipy import integrate
from scipy.spatial.transform import Rotation

from holobeam import kernels


def icosphere(level=3):
    """Unit vertices of a subdivided icosahedron: ``10 * 4**level + 2`` points."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    verts = [
        (-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
        (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
        (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1),
    ]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    verts = [np.array(v, dtype=np.float64) / np.linalg.norm(v) for v in verts]
    for _ in range(level):
        cache = {}

        def midpoint(i, j):
            key = (min(i, j), max(i, j))
            if key not in cache:
                m = verts[i] + verts[j]
                verts.append(m / np.linalg.norm(m))
                cache[key] = len(verts) - 1
            return cache[key]

        new_faces = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = new_faces
    return np.array(verts)


def directions_toward(u, level=3):
    """Icosphere vertices rotated so that vertex 0 is exactly ``u``."""
    pts = icosphere(level)
    u = np.asarray(u, dtype=np.float64) / np.linalg.norm(u)
    rot, _ = Rotation.align_vectors(u[None, :], pts[:1])
    out = rot.apply(pts)
    out[0] = u
    return out


def orientation_scan(x_e, x_r, a_e, a_r, s_e, s_r, t, directions):
    """``|coupling|`` for every pair of dish orientations.

    Returns an array of shape ``(len(directions), len(directions))``; entry
    ``[i, j]`` has the emitter along ``directions[i]`` and the receiver along
    ``directions[j]``.
    """
    d = np.asarray(x_r, dtype=np.float64) - np.asarray(x_e, dtype=np.float64)
    n = len(directions)
    y = (a_e * directions[:, None, :] + a_r * directions[None, :, :]).reshape(-1, 3)
    zr = np.broadcast_to(d, y.shape)
    tr = np.full(n * n, float(t))
    ti = np.full(n * n, -(s_e + s_r))
    values, status = kernels.green_batch(zr, -y, tr, ti)
    mag = np.abs(values)
    mag[status != kernels.OK] = -np.inf
    return mag.reshape(n, n)


def flux_by_adaptive_quadrature(y, radius, epsabs=1e-11):
    """Outward flux of grad(phi) from the analytic gradient ``z / (4 pi rt^3)``.

    ``rt`` here is ``numpy.sqrt`` of ``z . z``, which is on the right branch
    everywhere off the source disk, so this does not reuse the library's
    branch kernel. Integrates over the sphere with :func:`scipy.integrate.dblquad`.
    """
    y = np.asarray(y, dtype=np.float64)

    def integrand(phi, theta, part):
        n = np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])
        z = radius * n - 1j * y
        rt = np.sqrt(np.sum(z * z))
        if rt.real < 0:
            rt = -rt
        val = np.dot(n, z) / (4.0 * math.pi * rt**3) * radius**2 * math.sin(theta)
        return val.real if part == 0 else val.imag

    re, _ = integrate.dblquad(integrand, 0.0, math.pi, 0.0, 2.0 * math.pi, args=(0,), epsabs=epsabs)
    im, _ = integrate.dblquad(integrand, 0.0, math.pi, 0.0, 2.0 * math.pi, args=(1,), epsabs=epsabs)
    return complex(re, im)


def fwhm(t, values):
    """Full width at half maximum of a sampled single-peaked curve (linear interpolation)."""
    t = np.asarray(t)
    values = np.asarray(values)
    k = int(np.argmax(values))
    half = values[k] / 2.0
    lo = k
    while lo > 0 and values[lo] > half:
        lo -= 1
    hi = k
    while hi < len(values) - 1 and values[hi] > half:
        hi += 1
    left = t[lo] + (half - values[lo]) * (t[lo + 1] - t[lo]) / (values[lo + 1] - values[lo])
    right = t[hi - 1] + (half - values[hi - 1]) * (t[hi] - t[hi - 1]) / (values[hi] - values[hi - 1])
    return right - left
