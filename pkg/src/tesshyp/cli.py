"""Command-line front end.

Subcommands: generate, verify, delta, tiles, crossing. Flags can also come
from a ``key=value`` config file (--config); explicit flags win. Exit codes:
0 success, 1 verification failure, 2 usage error, 3 computation budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__, _kernels
from .errors import BudgetExceeded, FormatMismatch, SizeLimit, TesshypError
from .generators import GenConfig, VARIANTS, build, build_square_grid
from .graph import DEFAULT_BUDGET, Graph, to_text
from .hyperbolicity import curve_csv, delta_growth_curve
from .tiles import extract_tiles
from .verification import (
    boundary_crossing_profile,
    sup_log_deviation,
    sup_product_shift,
    tile_statistics,
    verify_dist_levels,
    verify_periodic_shift,
    verify_quasi_isometry,
    verify_t_decomposition,
)

DEFAULT_DEPTH = 8
DEFAULT_MARGIN = 2


def _add_common(p):
    p.add_argument("--config", help="key=value file supplying flag defaults")
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--depth", type=int)
    p.add_argument("--strips", type=int)
    p.add_argument("--mode", choices=("unit", "geometric"))
    p.add_argument("--margin", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", dest="fmt",
                   choices=("edgelist", "json", "dot", "csv", "report"))


def build_parser():
    parser = argparse.ArgumentParser(prog="tesshyp")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a truncation and write it")
    _add_common(p)

    p = sub.add_parser("verify", help="run the full lemma suite")
    _add_common(p)
    p.add_argument("--levels-m", type=int, default=3,
                   help="maximum level jump m for the window checks")
    p.add_argument("--stability", action="store_true",
                   help="re-run depth-sensitive checks at depth+1")

    p = sub.add_parser("delta", help="delta growth curve over balls")
    _add_common(p)
    p.add_argument("--radii", default="4,8,12",
                   help="comma-separated non-decreasing radii")
    p.add_argument("--subset", default="even",
                   help="even, all or sample:K")

    p = sub.add_parser("tiles", help="face table and tile statistics")
    _add_common(p)
    p.add_argument("--control-grid", type=int, metavar="N",
                   help="use an N x N unit square grid instead of a variant")

    p = sub.add_parser("crossing", help="boundary-line crossing profiles")
    _add_common(p)
    return parser


def _apply_config(args):
    if not args.config:
        return
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key == "format":
                key = "fmt"
            value = value.strip()
            if getattr(args, key, None) is None:
                if key in ("depth", "strips", "margin", "seed", "workers",
                           "levels_m", "control_grid"):
                    value = int(value)
                setattr(args, key, value)


def _defaults(args):
    args.depth = args.depth if args.depth is not None else DEFAULT_DEPTH
    args.strips = args.strips if args.strips is not None else 0
    args.margin = args.margin if args.margin is not None else DEFAULT_MARGIN
    args.seed = args.seed if args.seed is not None else 0
    args.workers = args.workers if args.workers is not None else (os.cpu_count() or 1)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def graph_to_json(g: Graph) -> str:
    payload = {
        "vertices": [
            {
                "id": i,
                "level": lab.level,
                "index": lab.index,
                "x": [lab.x.num, lab.x.exp],
                "y": [lab.y.num, lab.y.exp],
                "kind": lab.kind,
                "strip": lab.strip,
            }
            for i, lab in enumerate(g.labels)
        ],
        "edges": [[u, v, w] for u, v, w in g.edges],
    }
    return json.dumps(payload, sort_keys=True)


def graph_to_dot(g: Graph) -> str:
    if g.n_vertices > 500:
        raise SizeLimit(f"dot output limited to 500 vertices, graph has {g.n_vertices}")
    lines = ["graph tesshyp {"]
    for i, lab in enumerate(g.labels):
        lines.append(
            f'  {i} [pos="{float(lab.x)},{float(lab.y)}!" '
            f'label="{lab.kind}{lab.level},{lab.index}"];'
        )
    for u, v, w in g.edges:
        lines.append(f'  {u} -- {v} [len={w:.6g}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_graph(g: Graph, fmt: str, out: str | None):
    if fmt in (None, "edgelist"):
        _emit(to_text(g), out)
    elif fmt == "json":
        _emit(graph_to_json(g), out)
    elif fmt == "dot":
        _emit(graph_to_dot(g), out)
    else:
        raise FormatMismatch(f"format {fmt!r} cannot hold a graph")


def _header(args, extra=None) -> str:
    fields = {
        "backend": _kernels.backend_name(),
        "depth": args.depth,
        "strips": args.strips,
        "margin": args.margin,
        "seed": args.seed,
        "workers": args.workers,
    }
    if extra:
        fields.update(extra)
    body = " ".join(f"{k}={v}" for k, v in fields.items())
    return f"# tesshyp {body}\n"


def cmd_generate(args) -> int:
    cfg = GenConfig(depth=args.depth, variant=args.variant or "half-period",
                    strips=args.strips, mode=args.mode or "unit")
    emit_graph(build(cfg), args.fmt, args.out)
    return 0


def cmd_verify(args) -> int:
    depth = args.depth
    m = args.levels_m
    workers = args.workers
    reports = [
        verify_dist_levels(depth, m, margin=args.margin, workers=workers,
                           stability=args.stability),
        sup_log_deviation(depth, margin=args.margin, workers=workers,
                          stability=args.stability),
        sup_product_shift(depth, m, margin=args.margin, workers=workers,
                          stability=args.stability),
        verify_quasi_isometry(min(depth, 8), workers=workers),
        verify_t_decomposition(min(depth, 4), workers=workers),
        boundary_crossing_profile("period", depth, margin=args.margin),
        boundary_crossing_profile("tri-short", depth, margin=args.margin),
    ]
    td = min(depth, 6)
    tiles = extract_tiles(build(GenConfig(depth=td, variant="tri-short",
                                          mode="geometric")))
    reports.append(tile_statistics(tiles, td))
    ws = min(depth, 6)
    wg = build(GenConfig(depth=ws, variant="tessellation", strips=1,
                         mode="geometric"))
    reports.append(verify_periodic_shift(wg, ws, 1))

    if args.fmt == "json":
        text = json.dumps([json.loads(r.to_json()) for r in reports]) + "\n"
    else:
        text = _header(args, {"levels_m": m})
        text += "\n".join(r.to_text() for r in reports)
    _emit(text, args.out)
    failures = [r for r in reports if not r.passed]
    if failures:
        for r in failures:
            print(f"FAIL {r.check}: {r.counterexample}", file=sys.stderr)
        return 1
    return 0


def cmd_delta(args) -> int:
    radii = [float(r) for r in args.radii.split(",")]
    cfg = GenConfig(depth=args.depth, variant=args.variant or "tessellation",
                    strips=args.strips, mode=args.mode or "geometric")
    points = delta_growth_curve(cfg, radii, subset=args.subset,
                                seed=args.seed, workers=args.workers)
    _emit(curve_csv(points), args.out)
    return 0


def cmd_tiles(args) -> int:
    if args.control_grid:
        g = build_square_grid(args.control_grid)
        degenerating = False
    else:
        cfg = GenConfig(depth=args.depth, variant=args.variant or "tessellation",
                        strips=args.strips, mode=args.mode or "geometric")
        g = build(cfg)
        degenerating = True
    tiles = extract_tiles(g)
    report = tile_statistics(tiles, args.depth, degenerating=degenerating)
    lines = []
    for fid, face in enumerate(tiles.faces):
        verts = " ".join(str(v) for v in face.vertices)
        lines.append(
            f"{fid} {len(face.vertices)} {verts} {face.area:.17g} "
            f"{face.perimeter:.17g} {face.inradius:.17g} {int(face.convex)}"
        )
    text = _header(args) + "\n".join(lines) + "\n" + report.to_text()
    _emit(text, args.out)
    return 0 if report.passed else 1


def cmd_crossing(args) -> int:
    rows = ["variant,x,distance"]
    for variant in ("period", "tri-short"):
        rep = boundary_crossing_profile(variant, args.depth, margin=args.margin)
        for x, d in zip(rep.data["x"], rep.data["distance"]):
            rows.append(f"{variant},{x},{d:.17g}")
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config(args)
    _defaults(args)
    handlers = {
        "generate": cmd_generate,
        "verify": cmd_verify,
        "delta": cmd_delta,
        "tiles": cmd_tiles,
        "crossing": cmd_crossing,
    }
    try:
        return handlers[args.command](args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (TesshypError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
