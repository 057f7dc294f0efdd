"""Rectilinear spacetime grids: scenario configs, sampling, CSV/binary I/O.

Storage order is row-major over ``(x, y, z, t)``: ``t`` varies fastest.

Binary layout (``PBGF0001``), all little-endian:

    16 bytes   magic b"PBGF0001" followed by 8 NUL bytes
    4 x f64    origin
    4 x f64    spacing
    4 x u64    counts
    u8         slice mode (0 full4d, 1 fixed_time_3d, 2 axis_profile_1d)
    N x 2 f64  values, interleaved (re, im)
    ceil(N/8)  mask bits, least significant bit first, zero padded

Masked points (singular or outside the kernel domain) hold NaN values.
"""

import json
import math
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from holobeam import __version__, kernels
from holobeam.beam import EmitterDish, ReceiverDish
from holobeam.errors import BudgetExceededError, HolobeamError
from holobeam.holomorphic import DEFAULT_EPS
from holobeam.spacetime import RealSpacetimePoint, SpacetimeDirection

MAGIC = b"PBGF0001".ljust(16, b"\0")
_HEADER = struct.Struct("<4d4d4QB")
SLICE_MODES = ("full4d", "fixed_time_3d", "axis_profile_1d")
FIELD_KINDS = ("green", "emitted", "coupling", "far_zone")
DEFAULT_BUDGET = 10**8
CSV_HEADER = "x,y,z,t,re,im,mask"
_CHUNK = 1 << 18


@dataclass(frozen=True, eq=False)
class GridSpec:
    origin: np.ndarray
    spacing: np.ndarray
    counts: tuple
    slice_mode: str = "full4d"

    def __post_init__(self):
        origin = np.array(self.origin, dtype=np.float64).reshape(-1)
        spacing = np.array(self.spacing, dtype=np.float64).reshape(-1)
        counts = tuple(int(c) for c in self.counts)
        if origin.shape != (4,) or spacing.shape != (4,) or len(counts) != 4:
            raise HolobeamError("grid origin, spacing and counts must each have 4 entries")
        if not np.all(np.isfinite(origin)):
            raise HolobeamError("grid origin must be finite")
        if not np.all(spacing > 0.0) or not np.all(np.isfinite(spacing)):
            raise HolobeamError("grid spacing entries must be positive and finite")
        if min(counts) < 1:
            raise HolobeamError("grid counts must be >= 1")
        if self.slice_mode not in SLICE_MODES:
            raise HolobeamError(f"slice mode must be one of {SLICE_MODES}, got {self.slice_mode!r}")
        if self.slice_mode == "fixed_time_3d" and counts[3] != 1:
            raise HolobeamError("fixed_time_3d grids need a single time sample")
        if self.slice_mode == "axis_profile_1d" and sum(c > 1 for c in counts) > 1:
            raise HolobeamError("axis_profile_1d grids vary along at most one axis")
        origin.flags.writeable = False
        spacing.flags.writeable = False
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "counts", counts)

    @property
    def size(self):
        return math.prod(self.counts)

    def coordinates(self, flat_index):
        """Spacetime coordinates ``(M, 4)`` of the given flat indices."""
        idx = np.stack(np.unravel_index(np.asarray(flat_index), self.counts), axis=-1)
        return self.origin + idx * self.spacing

    def __eq__(self, other):
        if not isinstance(other, GridSpec):
            return NotImplemented
        return (
            np.array_equal(self.origin, other.origin)
            and np.array_equal(self.spacing, other.spacing)
            and self.counts == other.counts
            and self.slice_mode == other.slice_mode
        )


@dataclass(eq=False)
class FieldGrid:
    spec: GridSpec
    values: np.ndarray
    mask: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != (self.spec.size,) or self.mask.shape != (self.spec.size,):
            raise HolobeamError("values and mask must have one entry per grid point")

    def identical(self, other):
        """Bit-exact equality of spec, values and mask (metadata ignored)."""
        return (
            self.spec == other.spec
            and self.values.view(np.uint64).tobytes() == other.values.view(np.uint64).tobytes()
            and np.array_equal(self.mask, other.mask)
        )


@dataclass(frozen=True)
class ScenarioConfig:
    kind: str
    emitter: EmitterDish
    grid: GridSpec
    receiver: ReceiverDish = None
    output_path: str = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise HolobeamError(f"field kind must be one of {FIELD_KINDS}, got {self.kind!r}")
        if (self.kind == "coupling") != (self.receiver is not None):
            raise HolobeamError("a receiver dish is required for kind 'coupling' and only for it")
        if self.output_format not in ("csv", "bin"):
            raise HolobeamError("output format must be 'csv' or 'bin'")


# ---------------------------------------------------------------- config I/O


def _dish_from_dict(cls, d):
    try:
        center = RealSpacetimePoint(d["center"]["x"], d["center"]["t"])
        extension = SpacetimeDirection(d["extension"]["y"], d["extension"]["s"])
    except (KeyError, TypeError) as exc:
        raise HolobeamError(f"malformed dish entry: {exc}") from None
    return cls(center, extension)


def _dish_to_dict(dish):
    return {
        "center": {"x": dish.center.x.tolist(), "t": dish.center.t},
        "extension": {"y": dish.extension.y.tolist(), "s": dish.extension.s},
    }


def config_from_dict(d):
    try:
        g = d["grid"]
        grid = GridSpec(g["origin"], g["spacing"], g["counts"], g.get("slice_mode", "full4d"))
        emitter = _dish_from_dict(EmitterDish, d["emitter"])
        receiver = d.get("receiver")
        receiver = _dish_from_dict(ReceiverDish, receiver) if receiver is not None else None
        return ScenarioConfig(
            kind=d["kind"],
            emitter=emitter,
            grid=grid,
            receiver=receiver,
            output_path=d.get("output_path"),
            output_format=d.get("output_format", "csv"),
        )
    except KeyError as exc:
        raise HolobeamError(f"config is missing field {exc}") from None


def config_to_dict(cfg):
    return {
        "kind": cfg.kind,
        "emitter": _dish_to_dict(cfg.emitter),
        "receiver": _dish_to_dict(cfg.receiver) if cfg.receiver is not None else None,
        "grid": {
            "origin": cfg.grid.origin.tolist(),
            "spacing": cfg.grid.spacing.tolist(),
            "counts": list(cfg.grid.counts),
            "slice_mode": cfg.grid.slice_mode,
        },
        "output_path": cfg.output_path,
        "output_format": cfg.output_format,
    }


def load_config(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise HolobeamError(f"{path}: invalid JSON ({exc})") from None
    return config_from_dict(data)


# ---------------------------------------------------------------- sampling


def _evaluate(cfg, coords, eps):
    e = cfg.emitter
    x = coords[:, :3]
    t = coords[:, 3]
    if cfg.kind == "far_zone":
        d = x - e.center.x
        r = np.linalg.norm(d, axis=1)
        a = e.extension.a
        with np.errstate(divide="ignore", invalid="ignore"):
            cos_theta = np.where((r > 0) & (a > 0), d @ e.extension.y / (r * a), 1.0)
        values = kernels.far_zone_batch(r, t - e.center.t, a, e.extension.s, cos_theta)
        mask = ~(r > 0) | ~np.isfinite(values)
        values[mask] = complex(np.nan, np.nan)
        return values, mask

    if cfg.kind == "green":
        y, offset = e.extension, RealSpacetimePoint((0.0, 0.0, 0.0), 0.0)
    elif cfg.kind == "emitted":
        y, offset = e.extension, e.center
    else:
        y, offset = cfg.receiver.extension + e.extension, e.center
    zr = x - offset.x
    zi = np.broadcast_to(-y.y, zr.shape)
    tr = t - offset.t
    ti = np.full_like(tr, -y.s)
    values, status = kernels.green_batch(zr, zi, tr, ti, eps=eps)
    return values, status != kernels.OK


def sample_grid(cfg, budget=DEFAULT_BUDGET, eps=DEFAULT_EPS, order=None):
    """Evaluate the configured field at every grid point.

    Points on a singular set or outside the kernel domain are masked (value
    NaN) rather than raising. ``order`` optionally permutes the evaluation
    order; results are always stored by grid index, so the output does not
    depend on it.
    """
    n = cfg.grid.size
    if n > budget:
        raise BudgetExceededError(f"grid has {n} samples, budget is {budget}")
    values = np.empty(n, dtype=np.complex128)
    mask = np.empty(n, dtype=bool)
    indices = np.arange(n) if order is None else np.asarray(order)
    if indices.shape != (n,):
        raise HolobeamError("evaluation order must be a permutation of the grid indices")
    for start in range(0, n, _CHUNK):
        idx = indices[start : start + _CHUNK]
        v, m = _evaluate(cfg, cfg.grid.coordinates(idx), eps)
        values[idx] = v
        mask[idx] = m
    metadata = {"tool": f"holobeam {__version__}", **config_to_dict(cfg)}
    metadata.pop("output_path")
    metadata.pop("output_format")
    return FieldGrid(cfg.grid, values, mask, metadata)


# ---------------------------------------------------------------- file I/O


def write_csv(grid, path):
    coords = grid.spec.coordinates(np.arange(grid.spec.size))
    with open(path, "w", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for c, v, m in zip(coords, grid.values, grid.mask):
            fh.write(
                f"{c[0]:.17g},{c[1]:.17g},{c[2]:.17g},{c[3]:.17g},{v.real:.17g},{v.imag:.17g},{int(m)}\n"
            )


def read_csv(path):
    """Returns ``(coords (N, 4), values (N,), mask (N,))``."""
    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise HolobeamError(f"{path}: unexpected CSV header {header!r}")
        data = np.loadtxt(fh, delimiter=",", dtype=np.float64, ndmin=2)
    return data[:, :4], data[:, 4] + 1j * data[:, 5], data[:, 6].astype(bool)


def write_binary(grid, path):
    spec = grid.spec
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(
            _HEADER.pack(
                *spec.origin, *spec.spacing, *spec.counts, SLICE_MODES.index(spec.slice_mode)
            )
        )
        fh.write(np.ascontiguousarray(grid.values, dtype="<c16").tobytes())
        fh.write(np.packbits(grid.mask, bitorder="little").tobytes())


def read_binary(path):
    raw = Path(path).read_bytes()
    if raw[: len(MAGIC)] != MAGIC:
        raise HolobeamError(f"{path}: not a PBGF0001 file")
    pos = len(MAGIC)
    fields = _HEADER.unpack_from(raw, pos)
    pos += _HEADER.size
    mode = fields[12]
    if mode >= len(SLICE_MODES):
        raise HolobeamError(f"{path}: unknown slice mode {mode}")
    spec = GridSpec(fields[0:4], fields[4:8], fields[8:12], SLICE_MODES[mode])
    n = spec.size
    nbytes = 16 * n
    nmask = (n + 7) // 8
    if len(raw) != pos + nbytes + nmask:
        raise HolobeamError(f"{path}: truncated or oversized file")
    values = np.frombuffer(raw, dtype="<c16", count=n, offset=pos).astype(np.complex128)
    mask_bytes = np.frombuffer(raw, dtype=np.uint8, count=nmask, offset=pos + nbytes)
    mask = np.unpackbits(mask_bytes, bitorder="little")[:n].astype(bool)
    return FieldGrid(spec, values, mask)


def write_output(grid, path, fmt="csv"):
    if fmt == "csv":
        write_csv(grid, path)
    elif fmt in ("bin", "raw_binary"):
        write_binary(grid, path)
    else:
        raise HolobeamError(f"unknown output format {fmt!r}")
