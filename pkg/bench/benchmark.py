#!/usr/bin/env python3
"""Compare the compiled kernels against the numpy/scipy fallback.

Runs BFS hop counting, Dijkstra and the delta triple scan on a mid-size
truncation with both backends and prints a timing table plus the observed
speedups. The fallback is forced per-process via TESSHYP_PURE_NUMPY, so this
script re-executes itself once with the flag set.

Usage: python bench/benchmark.py [--depth 9] [--strips 1] [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def timings(depth, strips, repeat):
    from tesshyp import _kernels
    from tesshyp.generators import build_tessellation, center_vertex
    from tesshyp.graph import ball_subgraph
    from tesshyp.hyperbolicity import product_matrix

    g = build_tessellation(depth, strips, "tessellation", mode="geometric")
    src = center_vertex(g)
    ball, _ = ball_subgraph(g, src, 12)
    ids = ball.vertex_ids(lambda lab: lab.kind == "even")
    products = product_matrix(ball, center_vertex(ball), ids)

    cases = {
        "bfs_hops": lambda: _kernels.bfs_hops(g.indptr, g.indices, src),
        "dijkstra": lambda: _kernels.dijkstra(g.indptr, g.indices, g.weights, src),
        "delta_scan": lambda: _kernels.delta_scan(products, 0, products.shape[0]),
    }
    out = {"backend": _kernels.backend_name(),
           "vertices": g.n_vertices, "scan_size": len(ids)}
    for name, fn in cases.items():
        fn()  # warm up (JIT compile / scipy import)
        best = min(_timed(fn) for _ in range(repeat))
        out[name] = best
    return out


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=9)
    ap.add_argument("--strips", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--emit-json", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.emit_json:
        print(json.dumps(timings(args.depth, args.strips, args.repeat)))
        return

    results = []
    for force_numpy in (False, True):
        env = dict(os.environ)
        env["TESSHYP_PURE_NUMPY"] = "1" if force_numpy else "0"
        cmd = [sys.executable, __file__, "--depth", str(args.depth),
               "--strips", str(args.strips), "--repeat", str(args.repeat),
               "--emit-json"]
        out = subprocess.run(cmd, env=env, capture_output=True, text=True,
                             check=True)
        results.append(json.loads(out.stdout.strip().splitlines()[-1]))

    fast, slow = results
    print(f"graph: {fast['vertices']} vertices, "
          f"delta scan over {fast['scan_size']} ids")
    print(f"{'kernel':<12} {fast['backend']:>12} {slow['backend']:>12} {'speedup':>9}")
    for name in ("bfs_hops", "dijkstra", "delta_scan"):
        a, b = fast[name], slow[name]
        print(f"{name:<12} {a:>11.4f}s {b:>11.4f}s {b / a:>8.1f}x")


if __name__ == "__main__":
    main()
