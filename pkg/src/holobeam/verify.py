"""Invariant suites behind ``holobeam verify``.

Every suite takes a ``numpy.random.Generator`` and returns a
:class:`SuiteResult`. Randomized suites draw from independent streams spawned
from one seed, so a run is reproducible and suites can be filtered without
changing each other's samples.
"""

import math
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from holobeam import kernels, oracles
from holobeam.beam import (
    BeamGeometry,
    EmitterDish,
    ReceiverDish,
    coupling,
    duration,
    far_zone_field,
    optimal_alignment,
    peak_coupling,
)
from holobeam.directivity import GAP_FLOOR, convexity_gap_array, directivity_array
from holobeam.grid import GridSpec, ScenarioConfig, read_binary, read_csv, sample_grid, write_output
from holobeam.holomorphic import laplacian_residual, source_flux
from holobeam.spacetime import RealSpacetimePoint, SpacetimeDirection, distance_to_branch_set

DEFAULT_SEED = 42
GOLDEN_FLUX = 1.0


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def _random_unit(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_off_disk_points(rng, n, min_distance=1e-9):
    """Random ``(x, y)`` pairs with ``x`` at least ``min_distance * a`` from the disk."""
    a = rng.uniform(0.01, 2.0, n)
    y = a[:, None] * _random_unit(rng, n)
    x = rng.uniform(-3.0, 3.0, (n, 3))
    # distance_to_branch_set takes one y at a time; inline the batched form
    h = np.sum(x * y, axis=1) / a
    rho = np.linalg.norm(x - (h / a)[:, None] * y, axis=1)
    dist = np.hypot(np.maximum(rho - a, 0.0), h)
    keep = dist > min_distance * a
    return x[keep], y[keep]


def suite_branch(rng, n=10**6):
    x, y = random_off_disk_points(rng, n)
    t0 = time.perf_counter()
    rt = kernels.complex_distance_batch(x, -y)
    elapsed = time.perf_counter() - t0
    z = x - 1j * y
    zz = np.sum(z * z, axis=1)
    scale = np.sum(x * x, axis=1) + np.sum(y * y, axis=1)
    rel = np.abs(rt * rt - zz) / scale
    ok = bool(np.all(rt.real > 0.0) and rel.max() <= 1e-12 and elapsed < 10.0)
    return ok, f"{len(x)} pts, min Re={rt.real.min():.3g}, max rel sq err={rel.max():.2e}, {elapsed:.2f}s"


def suite_on_axis(rng, n=10**4):
    a = rng.uniform(0.01, 10.0, n)
    r = a * rng.uniform(1.0 + 1e-6, 100.0, n)
    u = _random_unit(rng, n)
    x = r[:, None] * u
    worst = 0.0
    for sign in (1.0, -1.0):
        y = sign * a[:, None] * u
        rt = kernels.complex_distance_batch(x, -y)
        expected = r - 1j * sign * a
        worst = max(worst, float(np.max(np.abs(rt - expected) / np.abs(expected))))
    return worst <= 1e-14, f"{n} (r, a) pairs at theta=0 and pi, max rel err={worst:.2e}"


def suite_harmonicity(rng, n=100):
    orders = []
    for _ in range(n):
        a = rng.uniform(0.2, 2.0)
        y = a * _random_unit(rng, 1)[0]
        while True:
            x = rng.uniform(-3.0, 3.0, 3)
            d = float(distance_to_branch_set(x, y))
            if d > 0.05 * a:
                break
        h = d / 50.0
        r1 = abs(laplacian_residual(x, y, h))
        r2 = abs(laplacian_residual(x, y, h / 2.0))
        orders.append(math.log2(r1 / r2))
    lo, hi = min(orders), max(orders)
    return 1.5 <= lo and hi <= 2.5, f"{n} pts, observed order in [{lo:.3f}, {hi:.3f}]"


def suite_flux(rng):
    y = SpacetimeDirection((0.0, 0.0, 0.5), 1.0)
    levels = [source_flux(y, 5.0, n) for n in (16, 32, 64)]
    converged = abs(levels[2] - levels[1]) <= 1e-6
    far = source_flux(y, 50.0, 64)
    r_indep = abs(far - levels[2]) <= 1e-4
    point = source_flux(SpacetimeDirection((0.0, 0.0, 1e-6), 1.0), 1.0, 32)
    golden = abs(levels[2] - GOLDEN_FLUX) <= 1e-6 and abs(point - 1.0) <= 1e-3
    ok = converged and r_indep and golden
    return ok, f"flux(R=5)={levels[2]:.12g}, flux(R=50)={far:.12g}, point limit={point:.6g}"


def suite_causality(rng):
    a, s = 0.5, 1.0
    e = EmitterDish(RealSpacetimePoint((0.0, 0.0, 0.0), 0.0), SpacetimeDirection((0.0, 0.0, a), s))
    dt = 0.01
    worst = 0.0
    for r in (5.0, 10.0, 20.0):
        ts = r + dt * np.arange(-500, 501)
        x = np.tile([0.0, 0.0, r], (len(ts), 1))
        vals, _ = kernels.green_batch(x, np.tile(-e.extension.y, (len(ts), 1)), ts, np.full(len(ts), -s))
        worst = max(worst, abs(ts[np.argmax(np.abs(vals))] - r) / dt)
    tt = 10.0 + np.linspace(-5.0, 5.0, 200001)
    profile = np.abs(kernels.far_zone_batch(10.0, tt, a, s, 1.0)) ** 2
    width = oracles.fwhm(tt, profile)
    rel = abs(width - 2.0 * (s - a)) / (2.0 * (s - a))
    ok = worst <= 1.0 and rel <= 0.02
    return ok, f"peak offset <= {worst:.2f} steps, FWHM={width:.5f} (rel err {rel:.1e})"


def suite_far_zone(rng):
    a, s = 0.5, 1.0
    ratios = np.logspace(1.0, 3.0, 9)
    errs = []
    for q in ratios:
        r = q * a
        vals, _ = kernels.green_batch([[0.0, 0.0, r]], [[0.0, 0.0, -a]], [r], [-s])
        exact = vals[0]
        approx = far_zone_field(BeamGeometry(r, r, a, s, 0.0))
        errs.append(abs(exact - approx) / abs(exact))
    slope = np.polyfit(np.log(ratios), np.log(errs), 1)[0]
    return abs(slope + 1.0) <= 0.1, f"log-log slope {slope:.4f} over r/a in [10, 1000]"


def suite_peak_coupling(rng, trials=20):
    worst = 0.0
    for _ in range(trials):
        a_e, a_r = rng.uniform(0.1, 1.0, 2)
        s_e, s_r = a_e + rng.uniform(0.05, 1.0), a_r + rng.uniform(0.05, 1.0)
        a = a_e + a_r
        u = _random_unit(rng, 1)[0]
        x_e = rng.uniform(-5.0, 5.0, 3)
        x_r = x_e + 100.0 * a * u
        y_e, y_r, t = optimal_alignment(x_e, x_r, a_e, a_r, s_e, s_r)
        e = EmitterDish(RealSpacetimePoint(x_e, 0.0), y_e)
        rd = ReceiverDish(RealSpacetimePoint(x_r, t), y_r)
        c = coupling(e, rd)
        p = peak_coupling(100.0 * a, a, s_e + s_r)
        worst = max(worst, abs(abs(c) - p) / p)
    return worst < 5.0 / 100.0, f"{trials} configs at r=100a, max rel err={worst:.2e} (bound 5e-2)"


def suite_alignment(rng):
    u = _random_unit(rng, 1)[0]
    a_e, a_r, s_e, s_r = 0.5, 0.5, 1.0, 1.0
    r = 100.0
    x_e = np.zeros(3)
    x_r = r * u
    y_e, y_r, t = optimal_alignment(x_e, x_r, a_e, a_r, s_e, s_r)
    dirs = oracles.directions_toward(u)
    mags = oracles.orientation_scan(x_e, x_r, a_e, a_r, s_e, s_r, t, dirs)
    i, j = np.unravel_index(int(np.argmax(mags)), mags.shape)
    anti = int(np.argmin(dirs @ u))
    ok = (
        (i, j) == (0, 0)
        and np.allclose(dirs[0] * a_e, y_e.y)
        and np.allclose(dirs[0] * a_r, y_r.y)
        and mags[anti, anti] < mags[0, 0]
    )
    return ok, f"{len(dirs)} dirs/dish, argmax at ({i}, {j}), anti-aligned ratio {mags[anti, anti] / mags[0, 0]:.4f}"


def _random_cone(rng, n):
    a = rng.uniform(0.0, 5.0, n) * (rng.uniform(size=n) > 0.05)
    s = a + rng.exponential(1.0, n) + 1e-9
    return a[:, None] * _random_unit(rng, n), s, a


def suite_convexity(rng, n=10**6):
    y1, s1, a1 = _random_cone(rng, n)
    y2, s2, _ = _random_cone(rng, n)
    gap = convexity_gap_array(y1, s1, y2, s2)
    d1 = directivity_array(a1, s1)
    zero_iff = bool(np.all((d1 == 0.0) == (a1 == 0.0)))
    ok = bool(np.all(gap >= -GAP_FLOOR)) and zero_iff
    return ok, f"{n} pairs, min gap={gap.min():.3g}, D=0 iff a=0: {zero_iff}"


def suite_properties(rng, n=2000):
    """Cheap pointwise invariants: contraction, rotation, conjugation, duration."""
    x, y = random_off_disk_points(rng, n, min_distance=1e-6)
    rt = kernels.complex_distance_batch(x, -y)
    r = np.linalg.norm(x, axis=1)
    a = np.linalg.norm(y, axis=1)
    contraction = bool(np.all(np.abs(rt - r) <= a * (1 + 1e-12) + 1e-15))
    conj = kernels.complex_distance_batch(x, y)
    conjugation = bool(np.allclose(conj, np.conj(rt), rtol=1e-13, atol=0))
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    rot = kernels.complex_distance_batch(x @ q.T, -y @ q.T)
    rotation = bool(np.allclose(rot, rt, rtol=1e-12, atol=1e-14))
    thetas = np.linspace(0.0, math.pi, 200)
    T = np.array([duration(th, 0.7, 1.0) for th in thetas])
    dur = bool(np.all(np.diff(T) > 0) and T[0] == 1.0 - 0.7 and abs(T[-1] - 1.7) < 1e-15)
    ok = contraction and conjugation and rotation and dur
    return ok, f"contraction={contraction} conjugation={conjugation} rotation={rotation} duration={dur}"


def suite_infrastructure(rng):
    e = EmitterDish(RealSpacetimePoint((0.0, 0.0, 0.0), 0.0), SpacetimeDirection((0.0, 0.0, 0.5), 1.0))
    spec = GridSpec((-1.0, -1.0, 1.0, 0.0), (0.5, 0.5, 0.5, 0.25), (5, 5, 3, 8))
    cfg = ScenarioConfig("emitted", e, spec)
    order = rng.permutation(spec.size)
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        g1 = sample_grid(cfg)
        g2 = sample_grid(cfg, order=order)
        for fmt in ("csv", "bin"):
            write_output(g1, tmp / f"a.{fmt}", fmt)
            write_output(g2, tmp / f"b.{fmt}", fmt)
        deterministic = all((tmp / f"a.{f}").read_bytes() == (tmp / f"b.{f}").read_bytes() for f in ("csv", "bin"))
        roundtrip = read_binary(tmp / "a.bin").identical(g1)
        _, vals, mask = read_csv(tmp / "a.csv")
        csv_ok = np.array_equal(vals, g1.values, equal_nan=True) and np.array_equal(mask, g1.mask)
    ok = deterministic and roundtrip and csv_ok
    return ok, f"deterministic={deterministic} bin_roundtrip={roundtrip} csv_roundtrip={csv_ok}"


SUITES = {
    "branch": suite_branch,
    "on_axis": suite_on_axis,
    "harmonicity": suite_harmonicity,
    "flux": suite_flux,
    "causality": suite_causality,
    "far_zone": suite_far_zone,
    "peak_coupling": suite_peak_coupling,
    "alignment": suite_alignment,
    "convexity": suite_convexity,
    "properties": suite_properties,
    "infrastructure": suite_infrastructure,
}


def run_suites(seed=DEFAULT_SEED, names=None):
    """Run the selected suites (all by default) and return their results in order."""
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    # one child stream per registered suite, independent of filtering
    streams = dict(zip(SUITES, np.random.SeedSequence(seed).spawn(len(SUITES))))
    results = []
    for name in names:
        t0 = time.perf_counter()
        try:
            passed, detail = SUITES[name](np.random.default_rng(streams[name]))
        except Exception as exc:  # a crashing suite is a failing suite
            passed, detail = False, f"error: {type(exc).__name__}: {exc}"
        results.append(SuiteResult(name, bool(passed), detail, time.perf_counter() - t0))
    return results


def format_table(results):
    width = max(len(r.name) for r in results)
    lines = [f"{'suite':<{width}}  result  time(s)  detail"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.seconds:7.2f}  {r.detail}")
    return "\n".join(lines)
