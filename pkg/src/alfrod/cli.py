"""Command-line front end.

Exit codes: 0 success, 1 validation failure (mathematically invalid data or a
failing verification), 2 malformed input (files, arguments).  stdout carries
machine-readable JSON/CSV only; human messages go to stderr.  All numeric
output is rounded to 9 significant digits for reproducible diffs.
"""

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from .blowup import BlowupRequest, blow_up
from .curvature import verify_suite
from .errors import InputError, ParseError, ValidationError
from .examples import EXAMPLES, make_example
from .metric import moment_map, tod_metric
from .polytope import classify_smooth, delzant_check, lattice_coords, polytope_vertices
from .rodfile import parse_rod_file, serialize_rod
from .svg import export_polytope_svg


def _round9(obj):
    if isinstance(obj, float):
        return float(format(obj, ".9g"))
    if isinstance(obj, dict):
        return {k: _round9(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round9(v) for v in obj]
    return obj


def _emit_json(obj, path: Optional[str] = None) -> None:
    text = json.dumps(_round9(obj), indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_rod(path: str):
    try:
        with open(path, "rb") as fh:
            return parse_rod_file(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read rod file {path!r}: {exc}") from None


def _parse_params(items: List[str]) -> dict:
    params = {}
    for item in items:
        if "=" not in item:
            raise InputError(f"--param expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise InputError(f"--param value must be numeric, got {item!r}") from None
    return params


def _cmd_example(args) -> int:
    if args.name == "list":
        _emit_json({"examples": EXAMPLES})
        return 0
    rod = make_example(args.name, _parse_params(args.param))
    text = serialize_rod(rod)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    rod = _read_rod(args.rod)
    try:
        n_rho, n_z = (int(v) for v in args.grid.lower().split("x"))
    except ValueError:
        raise InputError(f"--grid expects NxM, got {args.grid!r}") from None
    report = verify_suite(rod, grid=(n_rho, n_z), h=args.h)
    doc = report.to_dict()
    if args.report:
        _emit_json(doc, args.report)
        print(f"wrote {args.report}", file=sys.stderr)
    _emit_json(doc)
    if not report.all_passed:
        failed = [c.name for c in report.checks if not c.passed]
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def _cmd_polytope(args) -> int:
    rod = _read_rod(args.rod)
    data = lattice_coords(rod) if args.lattice else polytope_vertices(rod.f, rod.angles)
    report = delzant_check(rod.normals, rod.angles)
    verts = data.vertices_lattice if data.vertices_lattice is not None \
        else data.vertices_canonical
    doc = {
        "vertices_canonical": data.vertices_canonical.tolist(),
        "vertices_lattice": (data.vertices_lattice.tolist()
                             if data.vertices_lattice is not None else None),
        "basis": data.basis.tolist() if data.basis is not None else None,
        "angles": data.angles.tolist(),
        "rod_constants": [None if v != v else v for v in rod.F.tolist()],
        "normals": rod.normals.tolist(),
        "delzant": report.to_dict(),
    }
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["edge_index", "x", "y", "angle"])
            for e, (x, y) in enumerate(verts):
                angle = rod.angles[e] if e < len(rod.angles) else ""
                writer.writerow([e, format(x, ".9g"), format(y, ".9g"),
                                 format(angle, ".9g") if angle != "" else ""])
        print(f"wrote {args.csv}", file=sys.stderr)
    if args.svg:
        export_polytope_svg(data, args.svg)
        print(f"wrote {args.svg}", file=sys.stderr)
    _emit_json(doc)
    return 0


def _cmd_eval(args) -> int:
    rod = _read_rod(args.rod)
    try:
        with open(args.points, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or \
                    [c.strip() for c in reader.fieldnames[:2]] != ["rho", "z"]:
                raise InputError(
                    f"points file {args.points!r} needs a 'rho,z' header")
            points = [(float(row["rho"]), float(row["z"])) for row in reader]
    except OSError as exc:
        raise InputError(f"cannot read points file {args.points!r}: {exc}") from None
    except ValueError as exc:
        raise InputError(f"bad numeric value in {args.points!r}: {exc}") from None
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["rho", "z", "e2nu", "V", "F", "x1", "mu"])
    for rho, z in points:
        ms = tod_metric(rod.f, rho, z)
        x1, mu = moment_map(rod.f, rho, z)
        writer.writerow([format(v, ".9g")
                         for v in (rho, z, ms.e2nu, ms.V, ms.F, x1, mu)])
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out.getvalue())
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(out.getvalue())
    return 0


def _cmd_blowup(args) -> int:
    rod = _read_rod(args.rod)
    out = blow_up(BlowupRequest(rod=rod, vertex_index=args.vertex, alpha=args.angle))
    text = serialize_rod(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_classify(args) -> int:
    _emit_json(classify_smooth(args.rank).to_dict())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alfrod",
        description="Toric ALF instantons from convex piecewise-linear rod functions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", help="emit a named example as a rod-v1 file "
                                       "(or 'list' to enumerate)")
    p.add_argument("name")
    p.add_argument("--param", action="append", default=[], metavar="K=V")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_example)

    p = sub.add_parser("verify", help="run the numerical verification suite")
    p.add_argument("rod")
    p.add_argument("--grid", default="9x9", metavar="NxM")
    p.add_argument("--h", type=float, default=None, metavar="STEP")
    p.add_argument("--report", metavar="OUT.json")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("polytope", help="moment polytope vertices and regularity")
    p.add_argument("rod")
    p.add_argument("--svg", metavar="OUT.svg")
    p.add_argument("--csv", metavar="OUT.csv")
    p.add_argument("--lattice", action="store_true")
    p.set_defaults(func=_cmd_polytope)

    p = sub.add_parser("eval", help="evaluate metric scalars on a point list")
    p.add_argument("rod")
    p.add_argument("--points", required=True, metavar="PTS.csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("blowup", help="insert an edge at a polytope vertex")
    p.add_argument("rod")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--angle", type=float, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_blowup)

    p = sub.add_parser("classify", help="enumerate smooth families by kink count")
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(func=_cmd_classify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
