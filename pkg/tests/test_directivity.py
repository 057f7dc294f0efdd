import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holobeam import ConeViolationError, SpacetimeDirection, convexity_gap, directivity
from holobeam.directivity import GAP_FLOOR, convexity_gap_array, directivity_array, directivity_from


def along(a, s, u=(0.0, 0.0, 1.0)):
    return SpacetimeDirection(a * np.asarray(u, dtype=float), s)


@st.composite
def cone_points(draw):
    y = np.array(draw(st.tuples(*[st.floats(-5, 5)] * 3)))
    s = float(np.linalg.norm(y)) + draw(st.floats(1e-6, 10))
    return SpacetimeDirection(y, s)


def test_directivity_examples():
    assert directivity(along(0, 1)) == 0.0
    assert directivity(along(1, 2)) == 1.0
    with pytest.raises(ConeViolationError):
        directivity(along(1, 1))
    with pytest.raises(ConeViolationError):
        directivity_from(0.0, 0.0)


def test_gap_examples():
    assert convexity_gap(along(1, 3), along(1, 3)) == pytest.approx(0.5, abs=1e-15)
    # zero-radius first argument: gap = D(y2) - D(|y2|, s1 + s2)
    y2 = along(1, 2, (0.6, 0.8, 0))
    for s1 in (1.0, 0.1, 1e-3):
        expected = 1.0 - 1.0 / (s1 + 2 - 1)
        assert convexity_gap(along(0, s1), y2) == pytest.approx(expected, rel=1e-12)
    # anti-parallel equal radii: the sum has zero radius
    y1 = along(0.7, 1.0, (1, 0, 0))
    y2 = along(0.7, 2.0, (-1, 0, 0))
    assert convexity_gap(y1, y2) == pytest.approx(directivity(y1) + directivity(y2), rel=1e-15)


def test_gap_vanishes_only_in_degenerate_limit():
    # parallel, equal directivity d: the mediant leaves a gap of exactly d
    for d in (0.5, 2.0):
        y1 = along(d * 1.0, (1 + d) * 1.0)
        y2 = along(d * 3.0, (1 + d) * 3.0)
        assert directivity(y1) == pytest.approx(d) and directivity(y2) == pytest.approx(d)
        assert convexity_gap(y1, y2) == pytest.approx(d, rel=1e-12)
    gaps = [convexity_gap(along(0.0, s1), along(1.0, 2.0)) for s1 in (1e-1, 1e-3, 1e-6)]
    assert gaps[0] > gaps[1] > gaps[2] >= 0
    assert gaps[2] < 1e-5


@settings(max_examples=500, deadline=None)
@given(y1=cone_points(), y2=cone_points())
def test_subadditive(y1, y2):
    assert convexity_gap(y1, y2) >= -GAP_FLOOR


@settings(max_examples=300, deadline=None)
@given(y=cone_points(), lam=st.floats(1e-3, 1e3))
def test_degree_zero_homogeneity(y, lam):
    scaled = SpacetimeDirection(lam * y.y, lam * y.s)
    # round-off is amplified by the conditioning s / (s - a) near the cone boundary
    cond = y.s / (y.s - y.a)
    assert directivity(scaled) == pytest.approx(directivity(y), rel=1e-14 * cond, abs=1e-15)


def test_homogeneity_exact_for_power_of_two_scaling():
    y = SpacetimeDirection((0.3, -0.4, 1.2), 2.7)
    for lam in (0.25, 2.0, 1024.0):
        assert directivity(SpacetimeDirection(lam * y.y, lam * y.s)) == directivity(y)


@settings(max_examples=300, deadline=None)
@given(a=st.floats(0, 5), da=st.floats(1e-3, 1), ds=st.floats(1e-3, 5))
def test_monotone(a, da, ds):
    s = a + da + ds
    assert directivity_from(a + da, s) > directivity_from(a, s)
    assert directivity_from(a, s + ds) < directivity_from(a, s) or a == 0


def test_not_midpoint_convex():
    # Hessian in (a, s) is indefinite; this pair violates midpoint convexity
    u, v = (0.4, 0.85), (0.6, 1.15)
    mid = directivity_from(0.5, 1.0)
    assert mid > 0.5 * (directivity_from(*u) + directivity_from(*v))


def test_zero_iff_flat(rng):
    a = rng.uniform(0, 3, 10000) * (rng.uniform(size=10000) > 0.3)
    s = a + rng.exponential(1, 10000) + 1e-9
    d = directivity_array(a, s)
    np.testing.assert_array_equal(d == 0.0, a == 0.0)
    assert np.all(np.isfinite(d)) and np.all(d >= 0)


def test_vectorized_matches_scalar(rng):
    y1 = rng.normal(size=(200, 3))
    y2 = rng.normal(size=(200, 3))
    s1 = np.linalg.norm(y1, axis=1) + rng.exponential(1, 200)
    s2 = np.linalg.norm(y2, axis=1) + rng.exponential(1, 200)
    gaps = convexity_gap_array(y1, s1, y2, s2)
    for k in range(200):
        ref = convexity_gap(SpacetimeDirection(y1[k], s1[k]), SpacetimeDirection(y2[k], s2[k]))
        assert gaps[k] == pytest.approx(ref, rel=1e-12, abs=1e-14)
    assert math.isnan(directivity_array(1.0, 1.0))
