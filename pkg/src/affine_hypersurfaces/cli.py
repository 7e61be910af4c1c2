"""Command-line interface.

Exit codes: 0 success, 2 unreadable or malformed input, 3 domain or ambient
error, 4 constructor precondition failure, 5 theorem violation, 6 OBJ export
requested for n != 2.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .constructors import (
    EigenSolutionParams,
    construct_cimc,
    construct_crc,
    construct_cylinder,
    construct_eigen,
)
from .errors import (
    AmbientMismatch,
    ConstructionError,
    DimensionMismatch,
    DomainSingularity,
    EmptyGrid,
    HypersurfaceError,
    SpecParseError,
)
from .model import Ambient, height_batch, identity_map, make_affine_map
from .reports import GridSpec, Quantity, Verdict
from .spec_io import profile_from_dict, csv_text, dump_spec, format_json, load_spec, obj_text
from .verification import Theorem, evaluator, scan, theorem_verdict

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_CONSTRUCT = 4
EXIT_VIOLATION = 5
EXIT_FORMAT = 6

QUANTITIES = {
    "gk": Quantity.GAUSS_KRONECKER,
    "relative": Quantity.RELATIVE_CURVATURE,
    "mean": Quantity.ISOTROPIC_MEAN,
    "principal": Quantity.PRINCIPAL,
    "Ki": Quantity.CURVATURE_FUNCTION,
}


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def parse_axis(text):
    """``LO..HI:N`` -> (lo, hi, n)."""
    try:
        bounds, count = text.rsplit(":", 1)
        lo, hi = bounds.split("..")
        return float(lo), float(hi), int(count)
    except ValueError:
        raise CliError(EXIT_PARSE, f"bad grid axis {text!r}; expected LO..HI:N") from None


def build_grid(axes, n, exclusion):
    """One axis broadcasts to all n; otherwise exactly n axes are required."""
    parsed = [parse_axis(a) for a in axes] if axes else [(-1.0, 1.0, 21)]
    if len(parsed) == 1:
        parsed = parsed * n
    if len(parsed) != n:
        raise CliError(EXIT_PARSE, f"got {len(parsed)} grid axes for n = {n}")
    counts = {p[2] for p in parsed}
    if len(counts) != 1:
        raise CliError(EXIT_PARSE, "every grid axis must use the same point count")
    try:
        return GridSpec(
            tuple(p[0] for p in parsed), tuple(p[1] for p in parsed), counts.pop(), exclusion
        )
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None


def _load(path):
    try:
        return load_spec(path)
    except FileNotFoundError:
        raise CliError(EXIT_PARSE, f"spec file not found: {path}") from None
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from None
    except SpecParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_curvature(args):
    spec = _load(args.spec)
    grid = build_grid(args.grid, spec.n, args.exclude)
    quantity = QUANTITIES[args.quantity]
    report = scan(spec, quantity, grid, index=args.index, workers=args.workers)
    if args.out:
        heights = height_batch(spec, report.points)
        _write(args.out, csv_text(report.points, heights, report.values))
    sys.stdout.write(format_json(report.to_dict()) + "\n")
    return EXIT_OK


def _floats(values, name, n=None):
    if values is None:
        return None
    if n is not None and len(values) != n:
        raise CliError(EXIT_CONSTRUCT, f"--{name} needs {n} values, got {len(values)}")
    return [float(v) for v in values]


def _construct_map(args):
    try:
        if args.matrix:
            return make_affine_map(json.loads(args.matrix))
        return identity_map(args.n)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"--matrix is not valid JSON: {exc.msg}") from None
    except HypersurfaceError as exc:
        raise CliError(EXIT_CONSTRUCT, f"--matrix: {exc}") from None


def cmd_construct(args):
    amap = _construct_map(args)
    n = amap.n
    ambient = Ambient(args.ambient) if args.ambient else None
    theorem = args.theorem

    def need(value, flag):
        if value is None:
            raise CliError(EXIT_CONSTRUCT, f"--theorem {theorem} requires --{flag}")
        return value

    if theorem == "crc":
        spec = construct_crc(
            amap,
            need(args.k0, "k0"),
            _floats(need(args.c, "c"), "c", n - 1),
            _floats(args.d, "d", n),
            _floats(args.e, "e", n),
            ambient or Ambient.ISOTROPIC,
        )
    elif theorem == "cimc":
        spec = construct_cimc(
            amap,
            need(args.h0, "h0"),
            _floats(need(args.c, "c"), "c", n),
            _floats(args.d, "d", n),
            _floats(args.e, "e", n),
            ambient or Ambient.ISOTROPIC,
        )
    elif theorem == "eigen":
        params = EigenSolutionParams(
            need(args.lam, "lambda"),
            _floats(need(args.c, "c"), "c", n),
            _floats(args.d, "d", n) or [0.0] * n,
            _floats(args.mu, "mu", n) or [0.0] * n,
        )
        spec = construct_eigen(amap, params, ambient or Ambient.ISOTROPIC)
    else:
        try:
            others = [
                profile_from_dict(json.loads(p), f"--profile[{k}]")
                for k, p in enumerate(args.profile or [])
            ]
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_PARSE, f"--profile is not valid JSON: {exc.msg}") from None
        except SpecParseError as exc:
            raise CliError(EXIT_PARSE, str(exc)) from None
        spec = construct_cylinder(
            amap,
            args.index,
            args.slope,
            args.intercept,
            others,
            ambient or Ambient.EUCLIDEAN,
        )
    _write(args.out, dump_spec(spec))
    return EXIT_OK


def cmd_verify(args):
    spec = _load(args.spec)
    grid = build_grid(args.grid, spec.n, args.exclude)
    report = theorem_verdict(spec, Theorem(args.theorem), grid, lam=args.lam)
    doc = report.to_dict()
    doc["details"] = {k: v for k, v in report.details.items() if k != "theorem"}
    sys.stdout.write(format_json({"theorem": args.theorem, **doc}) + "\n")
    return EXIT_VIOLATION if report.verdict is Verdict.VIOLATES else EXIT_OK


def cmd_export(args):
    spec = _load(args.spec)
    if args.format == "obj" and spec.n != 2:
        raise CliError(EXIT_FORMAT, f"OBJ export needs n = 2, spec has n = {spec.n}")
    grid = build_grid(args.grid, spec.n, args.exclude)
    pts, keep = grid.sample(spec)
    if not np.any(keep):
        raise EmptyGrid("every grid point was excluded")
    heights = np.full(pts.shape[0], np.nan)
    heights[keep] = height_batch(spec, pts[keep])
    if args.format == "obj":
        text = obj_text(pts, heights, keep, grid.points_per_axis)
    else:
        values = None
        if args.quantity:
            values = evaluator(QUANTITIES[args.quantity], spec.n, args.index)(spec, pts[keep])
        text = csv_text(pts[keep], heights[keep], values)
    _write(args.out, text)
    return EXIT_OK


def _add_grid(p):
    p.add_argument("--grid", action="append", metavar="LO..HI:N",
                   help="grid axis; repeat per axis or give once to broadcast (default -1..1:21)")
    p.add_argument("--exclude", type=float, default=0.0, metavar="R",
                   help="skip points within R of a profile singularity")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ahk", description="Affine translation hypersurfaces: curvature and classification checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curvature", help="scan a curvature quantity over a grid")
    p.add_argument("--spec", required=True)
    p.add_argument("--quantity", required=True, choices=sorted(QUANTITIES))
    p.add_argument("--index", type=int, default=1, help="1-based index for principal / Ki")
    p.add_argument("--out", help="also write the samples as CSV")
    p.add_argument("--workers", type=int, default=1)
    _add_grid(p)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("construct", help="write a spec for a classified family")
    p.add_argument("--theorem", required=True, choices=["crc", "cimc", "eigen", "cylinder"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--matrix", help="JSON n x n matrix (default identity)")
    p.add_argument("--ambient", choices=[a.value for a in Ambient])
    p.add_argument("--k0", type=float)
    p.add_argument("--h0", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--c", nargs="+", type=float)
    p.add_argument("--d", nargs="+", type=float)
    p.add_argument("--e", nargs="+", type=float)
    p.add_argument("--mu", nargs="+", type=float)
    p.add_argument("--index", type=int, default=0, help="0-based position of the linear profile")
    p.add_argument("--slope", type=float, default=0.0)
    p.add_argument("--intercept", type=float, default=0.0)
    p.add_argument("--profile", action="append", help="JSON profile object (cylinder partners)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a classification theorem on a spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--theorem", required=True, choices=[t.value for t in Theorem])
    p.add_argument("--lambda", dest="lam", type=float)
    _add_grid(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write an OBJ mesh or CSV samples")
    p.add_argument("--spec", required=True)
    p.add_argument("--format", required=True, choices=["obj", "csv"])
    p.add_argument("--out")
    p.add_argument("--quantity", choices=sorted(QUANTITIES))
    p.add_argument("--index", type=int, default=1)
    _add_grid(p)
    p.set_defaults(func=cmd_export)
    return parser


def _join_grid_values(argv):
    # "--grid -1..1:21" would be read by argparse as an option; glue it on.
    out = []
    it = iter(argv)
    for token in it:
        if token == "--grid":
            value = next(it, None)
            out.append("--grid" if value is None else f"--grid={value}")
        else:
            out.append(token)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_grid_values(argv))
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCT
    except (DomainSingularity, AmbientMismatch, EmptyGrid, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except HypersurfaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCT if args.command == "construct" else EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCT if args.command == "construct" else EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
