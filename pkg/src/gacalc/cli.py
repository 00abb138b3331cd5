"""``gacalc`` command line.

Exit codes: 0 success, 2 parse/usage error, 3 math error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import Signature
from .apps import bench, fk3r, ik6r, load_network, power_network, scene_json
from .errors import GAError
from .parser import ParseError, Session, evaluate_text

EXIT_OK, EXIT_PARSE, EXIT_MATH = 0, 2, 3


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} values, got {len(vals)}")
    return vals


def _signature(text: str) -> Signature:
    try:
        return Signature.parse(text)
    except (GAError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gacalc", description="Geometric algebra calculator.")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a multivector expression")
    ev.add_argument("--sig", type=_signature, help="signature p,q,r")
    ev.add_argument("--cga", type=int, metavar="N", help="conformal model of R^N (null-basis display)")
    ev.add_argument("--scalars", choices=["float", "rational", "ratfun"], default="float")
    ev.add_argument("--clean", action="store_true", help="zero coefficients below 1e-12")
    ev.add_argument("--json", action="store_true", help="print the result as JSON")
    ev.add_argument("expr")

    fk = sub.add_parser("fk3r", help="planar 3R forward kinematics")
    fk.add_argument("--lengths", type=lambda t: _floats(t, 3), required=True)
    fk.add_argument("--angles", type=lambda t: _floats(t, 3), required=True)

    ik = sub.add_parser("ik6r", help="6R wrist-centre inverse kinematics")
    ik.add_argument("--d1", type=float, required=True)
    ik.add_argument("--a3", type=float, required=True)
    ik.add_argument("--d4", type=float, required=True)
    ik.add_argument("--target", type=lambda t: _floats(t, 3), required=True)
    ik.add_argument("--emit-geometry", metavar="FILE", help="write the scene as JSON")

    pw = sub.add_parser("power", help="three-phase network transfer functions")
    pw.add_argument("--config", help="network JSON (defaults to the built-in example)")
    pw.add_argument("--node", default=None, help="only print this node (v1, v2, v3, is)")
    pw.add_argument("--json", action="store_true")

    bn = sub.add_parser("bench", help="time construction and inversion")
    bn.add_argument("--max-sig", type=_signature, default=Signature(9, 1, 0))
    bn.add_argument("--start", type=int, default=6, help="smallest Euclidean dimension")
    bn.add_argument("--seed", type=int, default=0)
    return ap


def _cmd_eval(args, out) -> int:
    if args.sig is None and args.cga is None:
        raise ParseError("either --sig or --cga is required", 1)
    session = Session(args.sig, cga=args.cga, scalars=args.scalars)
    result = evaluate_text(args.expr, session)
    if args.clean:
        result = result.clean()
    if args.json:
        print(json.dumps(result.to_json()), file=out)
    else:
        print(result.to_text(), file=out)
    return EXIT_OK


def _cmd_fk3r(args, out) -> int:
    x, y, phi = fk3r(args.lengths, args.angles)
    print(f"x = {x:.12g}\ny = {y:.12g}\nphi = {phi:.12g}", file=out)
    return EXIT_OK


def _cmd_ik6r(args, out) -> int:
    result = ik6r(args.d1, args.a3, args.d4, args.target)
    for k, (sol, elbow) in enumerate(zip(result.solutions, result.elbows), 1):
        angles = ", ".join(f"{t:.4f}" for t in sol)
        where = ", ".join(f"{c:.4f}" for c in elbow)
        print(f"solution {k}: theta = ({angles})  elbow = ({where})", file=out)
    if args.emit_geometry:
        with open(args.emit_geometry, "w") as fh:
            json.dump(scene_json(result), fh, indent=2)
    return EXIT_OK


def _cmd_power(args, out) -> int:
    net = load_network(args.config) if args.config else None
    result = power_network(net)
    if args.node:
        if args.node not in result.voltages:
            raise ParseError(f"unknown node {args.node!r}", 1)
        result.voltages = {args.node: result.voltages[args.node]}
    if args.json:
        print(json.dumps(result.to_json(), indent=2), file=out)
    else:
        print(result.to_text(), file=out)
    return EXIT_OK


def _cmd_bench(args, out) -> int:
    report = bench(args.max_sig, start=args.start, seed=args.seed)
    for row in report:
        sig = "(" + ",".join(str(x) for x in row["signature"]) + ")"
        status = "ok" if row["ok"] else "FAILED"
        print(f"{sig:<10} construct {row['construct_s']:.4f} s  inverse {row['inverse_s']:.4f} s  "
              f"residual {row['residual']:.1e}  {status}", file=out)
    return EXIT_OK if all(r["ok"] for r in report) else EXIT_MATH


COMMANDS = {"eval": _cmd_eval, "fk3r": _cmd_fk3r, "ik6r": _cmd_ik6r,
            "power": _cmd_power, "bench": _cmd_bench}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except (GAError, ArithmeticError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
