"""Command-line front end.

Exit codes: 0 success, 1 verification or solve failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .assembly import DERIVED_KINDS
from .elemental import MatrixKind, element_matrix, local_gradient_matrix
from .geometry import DegenerateTriangle, compute_geometry
from .verify import run_verify
from .waveguide import BudgetExceeded, convergence_study, cutoff_modes

DUMP_KINDS = [k.value for k in MatrixKind] + sorted(DERIVED_KINDS) + ["local_gradient"]


class UsageError(ValueError):
    pass


def parse_corners(text: str):
    parts = text.replace(";", " ").split()
    if len(parts) != 3:
        raise UsageError(f"--corners needs three 'x,y' pairs, got {text!r}")
    pts = []
    for p in parts:
        xy = p.split(",")
        if len(xy) != 2:
            raise UsageError(f"bad corner {p!r}; expected 'x,y'")
        try:
            pts.append((float(xy[0]), float(xy[1])))
        except ValueError:
            raise UsageError(f"bad corner {p!r}; expected numbers") from None
    return pts


def parse_signs(text: str):
    if len(text) != 3 or any(ch not in "+-" for ch in text):
        raise UsageError(f"--signs must be three characters from '+-', got {text!r}")
    return tuple(1 if ch == "+" else -1 for ch in text)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def cmd_verify(args) -> int:
    if args.triangles < 1:
        raise UsageError("--triangles must be >= 1")
    report = run_verify(args.triangles, args.seed)
    sys.stdout.write(report.to_json() + "\n" if args.report == "json" else report.to_text())
    return 0 if report.passed else 1


def cmd_dump_matrix(args) -> int:
    corners = parse_corners(args.corners)
    signs = parse_signs(args.signs)
    geom = compute_geometry(corners, signs)
    if args.kind in DERIVED_KINDS:
        M = DERIVED_KINDS[args.kind](geom)
    elif args.kind == "local_gradient":
        M = local_gradient_matrix(geom)
    else:
        M = element_matrix(args.kind, geom).entries
    M = np.asarray(M, dtype=float)
    if args.format == "json":
        doc = {
            "kind": args.kind,
            "corners": [[float(x), float(y)] for x, y in geom.corners],
            "signs": list(signs),
            "area": float(geom.area),
            "matrix": [[float(_fmt(v)) for v in row] for row in M],
        }
        sys.stdout.write(json.dumps(doc) + "\n")
    else:
        sys.stdout.write("".join(",".join(_fmt(v) for v in row) + "\n" for row in M))
    return 0


def cmd_waveguide(args) -> int:
    if args.width <= 0 or args.height <= 0:
        raise UsageError("--width and --height must be positive")
    if args.nx < 1 or args.ny < 1 or args.n_modes < 1:
        raise UsageError("--nx, --ny and --n-modes must be >= 1")
    rows = cutoff_modes(args.width, args.height, args.nx, args.ny, args.mode_type, args.n_modes)
    if args.format == "json":
        doc = [{"index": r.index, "m": r.m, "n": r.n, "k_c": float(f"{r.k_c:.12g}"),
                "analytic": float(f"{r.analytic:.12g}"), "rel_error": float(f"{r.rel_error:.6e}")}
               for r in rows]
        sys.stdout.write(json.dumps({"mode_type": args.mode_type, "modes": doc}) + "\n")
    else:
        out = [f"# {args.mode_type.upper()} cutoff wavenumbers, a={args.width:g} b={args.height:g}, "
               f"mesh {args.nx}x{args.ny}",
               f"{'index':>5} {'(m,n)':>7} {'k_c':>16} {'analytic':>16} {'rel_error':>11}"]
        for r in rows:
            out.append(f"{r.index:>5} {f'({r.m},{r.n})':>7} {r.k_c:>16.12f} {r.analytic:>16.12f} "
                       f"{r.rel_error:>11.3e}")
        sys.stdout.write("\n".join(out) + "\n")
    return 0


def cmd_convergence(args) -> int:
    if args.levels < 3:
        raise UsageError("--levels must be >= 3")
    if args.base < 1:
        raise UsageError("--base must be >= 1")
    rows = convergence_study(args.mode_type, args.levels, args.base)
    if args.format == "json":
        doc = [{"level": r.level, "nx": r.nx, "h": r.h, "eigenvalue": float(f"{r.eigenvalue:.15g}"),
                "k_c": float(f"{r.k_c:.12g}"), "error": float(f"{r.error:.6e}"),
                "order": None if r.order is None else float(f"{r.order:.4f}")} for r in rows]
        sys.stdout.write(json.dumps({"mode_type": args.mode_type, "levels": doc}) + "\n")
    else:
        out = [f"# lowest {args.mode_type.upper()} eigenvalue, unit square",
               f"{'level':>5} {'nx':>4} {'h':>10} {'k_c':>16} {'error':>11} {'order':>7}"]
        for r in rows:
            order = "-" if r.order is None else f"{r.order:.3f}"
            out.append(f"{r.level:>5} {r.nx:>4} {r.h:>10.6f} {r.k_c:>16.12f} {r.error:>11.3e} {order:>7}")
        sys.stdout.write("\n".join(out) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtem", description="Quadratic-triangle elemental matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="dual-oracle check of every closed-form matrix")
    p.add_argument("--triangles", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump-matrix", help="print one elemental matrix")
    p.add_argument("--kind", required=True, choices=DUMP_KINDS)
    p.add_argument("--corners", required=True, help='"x1,y1 x2,y2 x3,y3"')
    p.add_argument("--signs", default="+++", help="edge signs, e.g. +-+")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_dump_matrix)

    p = sub.add_parser("waveguide", help="cutoff wavenumbers of a rectangular guide")
    p.add_argument("--width", type=float, required=True)
    p.add_argument("--height", type=float, required=True)
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--mode-type", choices=["tm", "te"], required=True)
    p.add_argument("--n-modes", type=int, default=5)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_waveguide)

    p = sub.add_parser("convergence", help="observed order under mesh halving (unit square)")
    p.add_argument("--mode-type", choices=["tm", "te"], default="tm")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--base", type=int, default=2, help="cells per side on the coarsest level")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_convergence)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (DegenerateTriangle, BudgetExceeded) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
