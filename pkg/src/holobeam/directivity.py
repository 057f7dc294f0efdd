"""Directivity ``D(y) = a / (s - a)`` on the future cone.

``D`` is subadditive on the cone, ``D(y1 + y2) <= D(y1) + D(y2)``, because
``|y1 + y2| <= a1 + a2`` and ``D`` is increasing in ``a``. It is positively
homogeneous of degree 0 and is *not* convex in the ordinary sense: its
Hessian in ``(a, s)`` has determinant ``-(s - a)**-4 < 0``.
"""

import numpy as np

from holobeam.errors import ConeViolationError
from holobeam.spacetime import SpacetimeDirection

GAP_FLOOR = 1e-12


def _directivity(a, s):
    if not (s > 0.0 and a < s):
        raise ConeViolationError(f"directivity needs 0 <= a < s, got a={a!r}, s={s!r}")
    return a / (s - a)


def directivity(y):
    """Dimensionless directivity of a future-cone direction, in ``[0, inf)``.

    Zero exactly when the spatial part vanishes.
    """
    return _directivity(y.a, y.s)


def directivity_from(a, s):
    return _directivity(float(a), float(s))


def convexity_gap(y1, y2):
    """``D(y1) + D(y2) - D(y1 + y2)``, the slack in subadditivity.

    Non-negative up to round-off; values in ``[-GAP_FLOOR, 0)`` should be
    read as zero.
    """
    if not isinstance(y1, SpacetimeDirection) or not isinstance(y2, SpacetimeDirection):
        raise TypeError("convexity_gap expects SpacetimeDirection arguments")
    return directivity(y1) + directivity(y2) - directivity(y1 + y2)


def directivity_array(a, s):
    """Vectorized directivity for arrays of radii and duration parameters.

    Entries outside the cone are NaN.
    """
    a = np.asarray(a, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        d = a / (s - a)
    return np.where((s > 0.0) & (a < s), d, np.nan)


def convexity_gap_array(y1, s1, y2, s2):
    """Vectorized :func:`convexity_gap`; ``y1``, ``y2`` have shape ``(N, 3)``."""
    a1 = np.linalg.norm(y1, axis=-1)
    a2 = np.linalg.norm(y2, axis=-1)
    a12 = np.linalg.norm(np.asarray(y1) + np.asarray(y2), axis=-1)
    return directivity_array(a1, s1) + directivity_array(a2, s2) - directivity_array(a12, np.add(s1, s2))
