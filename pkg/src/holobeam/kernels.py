"""Batched hot kernels: complex distance and holomorphic Green function.

Each kernel has a numba implementation (explicit loops) and a pure-numpy
implementation (whole-array expressions). :func:`complex_distance_batch` and
:func:`green_batch` dispatch on :func:`holobeam._accel.get_backend`.

Inputs are split into real and imaginary parts: a complex 3-vector batch is
``(zr, zi)`` with shape ``(N, 3)`` each, a complex time batch is ``(tr, ti)``
with shape ``(N,)``.

Branch convention for the square root of ``w = u + iv``: the result always has
non-negative real part. On the negative real axis (``v == 0``, ``u < 0``) the
imaginary part is taken negative, i.e. the value is the limit approached from
``v -> 0-``. For ``z = x - iy`` this is ``x . y -> 0+``, the side of the source
disk that ``y`` points to.
"""

import math

import numpy as np

from holobeam._accel import get_backend, njit

OK = 0
OUTSIDE_DOMAIN = 1
SINGULAR = 2

_INV_8IPI2 = 1.0 / (8j * math.pi**2)


# ---------------------------------------------------------------- numba path


@njit(cache=True)
def _branch_sqrt_scalar(u, v):
    m = math.hypot(u, v)
    if u >= 0.0:
        p = math.sqrt(0.5 * (m + u))
        q = v / (2.0 * p) if p > 0.0 else 0.0
    else:
        q = math.sqrt(0.5 * (m - u))
        p = abs(v) / (2.0 * q)
        if not v > 0.0:
            q = -q
    return p, q


@njit(cache=True)
def _distance_numba(zr, zi):
    n = zr.shape[0]
    out = np.empty(n, dtype=np.complex128)
    for k in range(n):
        u = 0.0
        v = 0.0
        for j in range(3):
            u += zr[k, j] * zr[k, j] - zi[k, j] * zi[k, j]
            v += 2.0 * zr[k, j] * zi[k, j]
        p, q = _branch_sqrt_scalar(u, v)
        out[k] = complex(p, q)
    return out


@njit(cache=True)
def _green_numba(zr, zi, tr, ti, eps):
    n = zr.shape[0]
    values = np.empty(n, dtype=np.complex128)
    status = np.zeros(n, dtype=np.int8)
    nan = complex(np.nan, np.nan)
    for k in range(n):
        u = 0.0
        v = 0.0
        a2 = 0.0
        for j in range(3):
            u += zr[k, j] * zr[k, j] - zi[k, j] * zi[k, j]
            v += 2.0 * zr[k, j] * zi[k, j]
            a2 += zi[k, j] * zi[k, j]
        p, q = _branch_sqrt_scalar(u, v)
        # -Im(tau - rt) > 0 is required for the Cauchy kernel to converge
        if not (q - ti[k]) > 0.0:
            values[k] = nan
            status[k] = OUTSIDE_DOMAIN
            continue
        tol = eps * max(1.0, math.sqrt(a2))
        dr = tr[k] - p
        di = ti[k] - q
        if math.hypot(p, q) < tol or math.hypot(dr, di) < tol:
            values[k] = nan
            status[k] = SINGULAR
            continue
        values[k] = _INV_8IPI2 / (complex(p, q) * complex(dr, di))
    return values, status


# ---------------------------------------------------------------- numpy path


def _branch_sqrt_numpy(u, v):
    m = np.hypot(u, v)
    with np.errstate(divide="ignore", invalid="ignore"):
        p_pos = np.sqrt(0.5 * (m + u))
        q_pos = np.where(p_pos > 0.0, v / (2.0 * p_pos), 0.0)
        q_neg = np.sqrt(0.5 * (m - u))
        p_neg = np.abs(v) / (2.0 * q_neg)
        q_neg = np.where(v > 0.0, q_neg, -q_neg)
    nonneg = u >= 0.0
    return np.where(nonneg, p_pos, p_neg), np.where(nonneg, q_pos, q_neg)


def _distance_numpy(zr, zi):
    u = np.sum(zr * zr - zi * zi, axis=-1)
    v = np.sum(2.0 * zr * zi, axis=-1)
    p, q = _branch_sqrt_numpy(u, v)
    return p + 1j * q


def _green_numpy(zr, zi, tr, ti, eps):
    u = np.sum(zr * zr - zi * zi, axis=-1)
    v = np.sum(2.0 * zr * zi, axis=-1)
    p, q = _branch_sqrt_numpy(u, v)
    tol = eps * np.maximum(1.0, np.sqrt(np.sum(zi * zi, axis=-1)))
    dr = tr - p
    di = ti - q
    outside = ~((q - ti) > 0.0)
    singular = ~outside & ((np.hypot(p, q) < tol) | (np.hypot(dr, di) < tol))
    status = np.zeros(u.shape, dtype=np.int8)
    status[outside] = OUTSIDE_DOMAIN
    status[singular] = SINGULAR
    with np.errstate(divide="ignore", invalid="ignore"):
        values = _INV_8IPI2 / ((p + 1j * q) * (dr + 1j * di))
    values[status != OK] = complex(np.nan, np.nan)
    return values, status


# ---------------------------------------------------------------- dispatch


def _as_batch(a, width=None):
    a = np.ascontiguousarray(a, dtype=np.float64)
    if width is None:
        return a.reshape(-1)
    return a.reshape(-1, width)


def complex_distance_batch(zr, zi, backend=None):
    """Branch-correct ``sqrt(z . z)`` for a batch of complex 3-vectors."""
    zr = _as_batch(zr, 3)
    zi = _as_batch(zi, 3)
    if (backend or get_backend()) == "numba":
        return _distance_numba(zr, zi)
    return _distance_numpy(zr, zi)


def green_batch(zr, zi, tr, ti, eps=1e-12, backend=None):
    """Holomorphic Green function on a batch of complex spacetime points.

    Returns ``(values, status)``. ``status`` is ``OK``, ``OUTSIDE_DOMAIN`` or
    ``SINGULAR`` per point; values at non-OK points are NaN.
    """
    zr = _as_batch(zr, 3)
    zi = _as_batch(zi, 3)
    tr = _as_batch(tr)
    ti = _as_batch(ti)
    if (backend or get_backend()) == "numba":
        return _green_numba(zr, zi, tr, ti, float(eps))
    return _green_numpy(zr, zi, tr, ti, float(eps))


def far_zone_batch(r, t, a, s, cos_theta):
    """Far-zone pulse ``1/(8 i pi^2 r) / (t - r - i (s - a cos(theta)))``."""
    duration = s - a * cos_theta
    with np.errstate(divide="ignore", invalid="ignore"):
        return _INV_8IPI2 / (r * (t - r - 1j * duration))
