"""Command-line interface.

Exit codes: 0 success, 1 domain or validation error (one-line diagnostic on
stderr), 2 verification failure.
"""

import argparse
import sys

import numpy as np

from holobeam import __version__
from holobeam.beam import (
    EmitterDish,
    ReceiverDish,
    coupling,
    optimal_alignment,
    peak_coupling,
)
from holobeam.directivity import convexity_gap, directivity, directivity_from
from holobeam.errors import HolobeamError
from holobeam.grid import (
    DEFAULT_BUDGET,
    GridSpec,
    ScenarioConfig,
    load_config,
    sample_grid,
    write_output,
)
from holobeam.holomorphic import holomorphic_green
from holobeam.spacetime import ComplexSpacetimePoint, RealSpacetimePoint, SpacetimeDirection, complex_distance
from holobeam.verify import DEFAULT_SEED, format_table, run_suites


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for verification failure
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def fmt_float(v):
    return f"{v:.15g}"


def fmt_sci6(v):
    """Six significant digits, scientific, exponent without padding: ``1.26651e-3``."""
    mantissa, exp = f"{v:.5e}".split("e")
    return f"{mantissa}e{int(exp)}"


def fmt_complex(c):
    return f"{c.real:.17g}{c.imag:+.17g}j"


def _dish(cls, values):
    if values is None:
        return None
    x, y, z, t, yx, yy, yz, s = values
    return cls(RealSpacetimePoint((x, y, z), t), SpacetimeDirection((yx, yy, yz), s))


def _common():
    p = _Parser(add_help=False)
    p.add_argument("--config", help="JSON scenario file")
    p.add_argument("--out", help="output path")
    p.add_argument("--format", choices=("csv", "bin"), default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized suites")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum grid samples")
    return p


DISH_HELP = "X Y Z T YX YY YZ S: center (x, t) and extension (y, s)"


def build_parser():
    common = _common()
    parser = _Parser(prog="holobeam", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"holobeam {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("distance", parents=[common], help="complex distance of x - iy")
    p.add_argument("--x", nargs=3, type=float, required=True)
    p.add_argument("--y", nargs=3, type=float, default=[0.0, 0.0, 0.0])

    p = sub.add_parser("green", parents=[common], help="holomorphic Green function at x - iy")
    p.add_argument("--x", nargs=3, type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--y", nargs=3, type=float, required=True)
    p.add_argument("--s", type=float, required=True)

    p = sub.add_parser("beam", parents=[common], help="sample a field over the config grid")

    p = sub.add_parser("coupling", parents=[common], help="emitter-receiver coupling")
    p.add_argument("--emitter", nargs=8, type=float, metavar="V", help=DISH_HELP)
    p.add_argument("--receiver", nargs=8, type=float, metavar="V", help=DISH_HELP)
    p.add_argument("--peak", action="store_true", help="print 1/(8 pi^2 r (s - a))")
    p.add_argument("--r", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--align", action="store_true", help="print the optimal orientations")
    p.add_argument("--xe", nargs=3, type=float)
    p.add_argument("--xr", nargs=3, type=float)
    p.add_argument("--ae", type=float)
    p.add_argument("--ar", type=float)
    p.add_argument("--se", type=float)
    p.add_argument("--sr", type=float)

    p = sub.add_parser("directivity", parents=[common], help="directivity D = a/(s - a)")
    p.add_argument("--a", type=float)
    p.add_argument("--y", nargs=3, type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--gap", nargs=8, type=float, metavar="V", help="Y1X Y1Y Y1Z S1 Y2X Y2Y Y2Z S2")

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--suite", action="append", help="run only this suite (repeatable)")

    p = sub.add_parser("profile", parents=[common], help="time profile of the emitted field at fixed x")
    p.add_argument("--emitter", nargs=8, type=float, metavar="V", help=DISH_HELP)
    p.add_argument("--x", nargs=3, type=float, required=True)
    p.add_argument("--t0", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    return parser


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing --{', --'.join(missing)}")


def _emit_grid(grid, args, cfg_format=None, cfg_path=None):
    fmt = args.format or cfg_format or "csv"
    path = args.out or cfg_path
    if path is None:
        raise UsageError("no output path: pass --out or set output_path in the config")
    write_output(grid, path, fmt)
    print(f"wrote {grid.spec.size} samples ({int(grid.mask.sum())} masked) to {path}")


def cmd_distance(args):
    x = np.array(args.x)
    y = np.array(args.y)
    print(fmt_complex(complex_distance(x - 1j * y)))
    return 0


def cmd_green(args):
    z = ComplexSpacetimePoint.from_parts(
        RealSpacetimePoint(args.x, args.t), SpacetimeDirection(args.y, args.s), sign=-1
    )
    print(fmt_complex(holomorphic_green(z)))
    return 0


def cmd_beam(args):
    if args.config is None:
        raise UsageError("beam: --config is required")
    cfg = load_config(args.config)
    grid = sample_grid(cfg, budget=args.budget)
    _emit_grid(grid, args, cfg.output_format, cfg.output_path)
    return 0


def cmd_coupling(args):
    if args.peak:
        _need(args, "r", "a", "s")
        print(fmt_sci6(peak_coupling(args.r, args.a, args.s)))
        return 0
    if args.align:
        _need(args, "xe", "xr", "ae", "ar", "se", "sr")
        y_e, y_r, t = optimal_alignment(args.xe, args.xr, args.ae, args.ar, args.se, args.sr)
        print("y_e " + " ".join(fmt_float(v) for v in y_e.y) + f" s_e {fmt_float(y_e.s)}")
        print("y_r " + " ".join(fmt_float(v) for v in y_r.y) + f" s_r {fmt_float(y_r.s)}")
        print(f"t {fmt_float(t)}")
        return 0
    if args.config is not None:
        cfg = load_config(args.config)
        if cfg.kind != "coupling":
            raise HolobeamError("coupling: config kind must be 'coupling'")
        grid = sample_grid(cfg, budget=args.budget)
        _emit_grid(grid, args, cfg.output_format, cfg.output_path)
        return 0
    _need(args, "emitter", "receiver")
    print(fmt_complex(coupling(_dish(EmitterDish, args.emitter), _dish(ReceiverDish, args.receiver))))
    return 0


def cmd_directivity(args):
    if args.gap is not None:
        v = args.gap
        gap = convexity_gap(SpacetimeDirection(v[0:3], v[3]), SpacetimeDirection(v[4:7], v[7]))
        print(fmt_float(gap))
        return 0
    _need(args, "s")
    if args.y is not None:
        print(fmt_float(directivity(SpacetimeDirection(args.y, args.s))))
    else:
        _need(args, "a")
        print(fmt_float(directivity_from(args.a, args.s)))
    return 0


def cmd_verify(args):
    results = run_suites(seed=args.seed, names=args.suite)
    print(format_table(results))
    return 0 if all(r.passed for r in results) else 2


def cmd_profile(args):
    if args.emitter is not None:
        e = _dish(EmitterDish, args.emitter)
    elif args.config is not None:
        e = load_config(args.config).emitter
    else:
        raise UsageError("profile: pass --emitter or --config")
    if args.n < 1 or not args.dt > 0:
        raise UsageError("profile: need --n >= 1 and --dt > 0")
    spec = GridSpec((*args.x, args.t0), (1.0, 1.0, 1.0, args.dt), (1, 1, 1, args.n), "axis_profile_1d")
    grid = sample_grid(ScenarioConfig("emitted", e, spec), budget=args.budget)
    out = sys.stdout
    out.write("t,re,im,mask\n")
    for k in range(args.n):
        v = grid.values[k]
        out.write(f"{args.t0 + k * args.dt:.17g},{v.real:.17g},{v.imag:.17g},{int(grid.mask[k])}\n")
    return 0


COMMANDS = {
    "distance": cmd_distance,
    "green": cmd_green,
    "beam": cmd_beam,
    "coupling": cmd_coupling,
    "directivity": cmd_directivity,
    "verify": cmd_verify,
    "profile": cmd_profile,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, HolobeamError, ValueError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"holobeam: error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
