import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holobeam import (
    ComplexSpacetimePoint,
    DegenerateDiskError,
    RealSpacetimePoint,
    SpacetimeDirection,
    complex_distance,
    in_future_cone,
    in_future_tube,
    in_past_tube,
    source_disk,
)
from holobeam.spacetime import distance_to_branch_set

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(finite, finite, finite)


def mp_distance_limit(x, y, side, eps):
    """mpmath sqrt of z.z at x + side*eps*yhat (principal branch is correct off the disk)."""
    mpmath.mp.dps = 40
    yhat = np.asarray(y) / np.linalg.norm(y)
    p = [mpmath.mpf(float(c)) + side * mpmath.mpf(eps) * mpmath.mpf(float(n)) for c, n in zip(x, yhat)]
    z = [pc - 1j * mpmath.mpf(float(yc)) for pc, yc in zip(p, y)]
    return complex(mpmath.sqrt(sum(zc * zc for zc in z)))


@pytest.mark.parametrize(
    "y, s, expected",
    [((0, 0, 1), 2, True), ((0, 0, 1), 1, False), ((0, 0, 0), 0.5, True), ((3, 4, 0), 5.0001, True)],
)
def test_in_future_cone(y, s, expected):
    assert in_future_cone(SpacetimeDirection(y, s)) is expected


def test_tube_membership():
    x = RealSpacetimePoint((1.0, -2.0, 7.0), 3.0)
    past = ComplexSpacetimePoint.from_parts(x, SpacetimeDirection((0, 0, 1), 2), sign=-1)
    assert in_past_tube(past) and not in_future_tube(past)
    future = ComplexSpacetimePoint.from_parts(x, SpacetimeDirection((1, 0, 0), 3), sign=+1)
    assert in_future_tube(future) and not in_past_tube(future)
    real = ComplexSpacetimePoint.from_parts(x, SpacetimeDirection((0, 0, 0), 0), sign=-1)
    assert not in_past_tube(real) and not in_future_tube(real)


def test_complex_point_parts():
    z = ComplexSpacetimePoint.from_parts(RealSpacetimePoint((1, 2, 3), 4), SpacetimeDirection((5, 6, 7), 8))
    np.testing.assert_array_equal(z.z, [1 - 5j, 2 - 6j, 3 - 7j])
    assert z.tau == 4 - 8j
    assert z.real == RealSpacetimePoint((1, 2, 3), 4)
    assert -z.imag == SpacetimeDirection((5, 6, 7), 8)


@pytest.mark.parametrize(
    "x, y, expected",
    [((3, 4, 0), (0, 0, 0), 5.0), ((0, 0, 2), (0, 0, 1), 2 - 1j), ((0, 0, 2), (0, 0, -1), 2 + 1j)],
)
def test_complex_distance_examples(backend, x, y, expected):
    assert complex_distance(np.array(x) - 1j * np.array(y)) == pytest.approx(expected, abs=1e-15)


def test_on_disk_value_is_limit_from_positive_side(backend):
    x, y = (0.5, 0.0, 0.0), (0.0, 0.0, 1.0)
    limits = [mp_distance_limit(x, y, +1, eps) for eps in (1e-6, 1e-9, 1e-12)]
    assert limits[-1] == pytest.approx(-1j * math.sqrt(0.75), abs=1e-11)
    got = complex_distance(np.array(x) - 1j * np.array(y))
    assert got == pytest.approx(limits[-1], abs=1e-11)
    assert got == -1j * math.sqrt(0.75)
    # the other side converges to the conjugate: the disk is a genuine cut
    assert mp_distance_limit(x, y, -1, 1e-12) == pytest.approx(1j * math.sqrt(0.75), abs=1e-11)


def test_complex_distance_batch_shape():
    z = np.zeros((4, 5, 3), dtype=complex)
    z[..., 0] = 1.0
    out = complex_distance(z)
    assert out.shape == (4, 5)
    np.testing.assert_array_equal(out, 1.0)


def test_matches_mpmath_off_disk(backend, rng):
    for _ in range(50):
        x = rng.uniform(-3, 3, 3)
        y = rng.normal(size=3)
        if distance_to_branch_set(x, y) < 1e-3:
            continue
        mpmath.mp.dps = 30
        z = [mpmath.mpc(float(a), -float(b)) for a, b in zip(x, y)]
        ref = complex(mpmath.sqrt(sum(c * c for c in z)))
        assert complex_distance(x - 1j * y) == pytest.approx(ref, rel=1e-14)


def test_source_disk():
    d = source_disk(SpacetimeDirection((0, 0, 2), 3))
    assert d.radius == 2 and d.normal == (0.0, 0.0, 1.0)
    d = source_disk(SpacetimeDirection((0, 3, 0), 4))
    assert d.radius == 3 and d.normal == (0.0, 1.0, 0.0)
    with pytest.raises(DegenerateDiskError):
        source_disk(SpacetimeDirection((0, 0, 0), 1))


def test_disk_is_zero_set_of_square():
    # z.z vanishes exactly on the rim: |x| = a and x orthogonal to y
    y = np.array([0.0, 0.0, 1.5])
    for phi in np.linspace(0, 2 * np.pi, 7):
        x = 1.5 * np.array([np.cos(phi), np.sin(phi), 0.0])
        assert abs(complex_distance(x - 1j * y)) < 1e-7
    d = source_disk(SpacetimeDirection(y, 2.0))
    assert d.distance_to([0.0, 0.0, 0.7]) == pytest.approx(0.7)
    assert d.distance_to([2.5, 0.0, 0.0]) == pytest.approx(1.0)
    assert d.distance_to([1.0, 0.0, 0.0]) == 0.0


@settings(max_examples=300, deadline=None)
@given(x=vec3, y=vec3)
def test_contraction(x, y):
    x, y = np.array(x), np.array(y)
    rt = complex_distance(x - 1j * y)
    a = np.linalg.norm(y)
    assert rt.real >= 0.0
    assert abs(rt - np.linalg.norm(x)) <= a * (1 + 1e-12) + 1e-12


@settings(max_examples=300, deadline=None)
@given(x=vec3, y=vec3)
def test_square_consistency(x, y):
    z = np.array(x) - 1j * np.array(y)
    rt = complex_distance(z)
    scale = np.sum(np.abs(z) ** 2)
    assert abs(rt * rt - np.sum(z * z)) <= 1e-14 * max(scale, 1e-300)


@settings(max_examples=200, deadline=None)
@given(x=vec3, y=vec3, seed=st.integers(0, 2**32 - 1))
def test_rotation_invariance(x, y, seed):
    q, _ = np.linalg.qr(np.random.default_rng(seed).normal(size=(3, 3)))
    x, y = np.array(x), np.array(y)
    if distance_to_branch_set(x, y) < 1e-6 * max(1.0, np.linalg.norm(y)):
        return
    a = complex_distance(x - 1j * y)
    b = complex_distance(q @ x - 1j * (q @ y))
    assert b == pytest.approx(a, rel=1e-11, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(x=vec3, y=vec3)
def test_conjugation_symmetry(x, y):
    x, y = np.array(x), np.array(y)
    if distance_to_branch_set(x, y) < 1e-9:
        return
    assert complex_distance(x + 1j * y) == np.conj(complex_distance(x - 1j * y))


def test_continuity_off_disk(rng):
    for _ in range(2000):
        a = rng.uniform(0.1, 3.0)
        y = a * rng.normal(size=3)
        y *= a / np.linalg.norm(y)
        x = rng.uniform(-2 * a, 2 * a, 3)
        delta = distance_to_branch_set(x, y)
        if not 1e-3 * a < delta < 3 * a:
            continue
        h = rng.normal(size=3)
        h *= 1e-6 * a / np.linalg.norm(h)
        diff = abs(complex_distance(x + h - 1j * y) - complex_distance(x - 1j * y))
        assert diff <= 10.0 * max(1.0, a / delta) * np.linalg.norm(h)
