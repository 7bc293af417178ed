"""Acceptance criteria A1-A10.

Each test prints a single PASS/FAIL line on the live terminal (capture
disabled) and pins the tolerances stated in the project contract. Heavy
artifacts are shared through session fixtures so the suite stays inside its
runtime budgets.
"""

import math
import time

import pytest

from tesshyp.generators import (
    GenConfig,
    build,
    build_period,
    build_square_grid,
    build_tessellation,
    center_vertex,
)
from tesshyp.graph import ball_subgraph, single_source_distances
from tesshyp.hyperbolicity import delta_at_base, delta_growth_curve, subset_ids
from tesshyp.tiles import extract_tiles
from tesshyp.verification import (
    boundary_crossing_profile,
    sup_log_deviation,
    sup_product_shift,
    tile_statistics,
    verify_dist_levels,
    verify_quasi_isometry,
    verify_t_decomposition,
)

from oracles import brute_delta, nx_distances

WORKERS = 8


def announce(capsys, name, ok, detail=""):
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"{name}: {status}{' (' + detail + ')' if detail else ''}")
    assert ok, f"{name} failed: {detail}"


@pytest.fixture(scope="session")
def dist_report():
    t0 = time.perf_counter()
    rep = verify_dist_levels(10, 3, workers=WORKERS)
    return rep, time.perf_counter() - t0


@pytest.fixture(scope="session")
def curves():
    t0 = time.perf_counter()
    radii = [4.0, 8.0, 12.0, 16.0]
    out = {}
    for variant in ("tessellation", "tri-short"):
        cfg = GenConfig(depth=10, variant=variant, strips=1, mode="geometric")
        out[variant] = delta_growth_curve(cfg, radii, subset="even",
                                          workers=WORKERS)
    return out, time.perf_counter() - t0


def test_a1_distance_window(capsys, dist_report):
    rep, elapsed = dist_report
    ok = rep.passed and rep.ranges["n_max"] >= 5 and rep.ranges["m_max"] == 3
    ok = ok and elapsed < 60.0
    announce(capsys, "A1 level-pair distance window (depth 10, zero tolerance)",
             ok, f"n<=5 m<=3, {elapsed:.1f}s")


def test_a2_reachability_counts(capsys, dist_report):
    rep, _ = dist_report
    # the count checks are part of the same exact sweep; the sharpest
    # observed upward count must also respect the closed-form bound for m=3
    ok = rep.passed and rep.constants["max_upward_count"] <= 2 ** 4 + 2 ** 3 - 2
    announce(capsys, "A2 reachability counts (up <= 2^{m+1}+2^m-2, down <= 3)",
             ok, f"max up-count {rep.constants['max_upward_count']}")


def test_a3_log_distance_law(capsys):
    t0 = time.perf_counter()
    rep = sup_log_deviation(10, workers=WORKERS)
    elapsed = time.perf_counter() - t0
    ok = rep.passed and rep.constants["alpha"] <= 12.0 and elapsed < 120.0
    announce(capsys, "A3 same-level log distance law (levels <= 16)",
             ok, f"alpha={rep.constants['alpha']:.3f}, {elapsed:.1f}s")


def test_a4_product_shift(capsys):
    rep = sup_product_shift(12, 3, workers=WORKERS)
    ok = rep.passed and rep.ranges["n_max"] >= 7 and rep.constants["beta"] <= 16.0
    announce(capsys, "A4 base-point product shift under lifting (n <= 7)",
             ok, f"beta={rep.constants['beta']}")


def test_a5_quasi_isometry(capsys):
    rep = verify_quasi_isometry(8, workers=WORKERS)
    ratio = math.sqrt(5.0) / 2.0
    ok = (rep.passed
          and rep.constants["min_edge_length"] >= 1.0 - 1e-9
          and rep.constants["max_edge_length"] <= ratio + 1e-9
          and rep.constants["max_distance_ratio"] <= ratio + 1e-9)
    announce(capsys, "A5 unit/geometric quasi-isometry (depth 8, tol 1e-9)",
             ok, f"ratio in [{rep.constants['min_distance_ratio']:.6f}, "
                 f"{rep.constants['max_distance_ratio']:.6f}]")


def test_a6_dichotomy_curves(capsys, curves):
    out, elapsed = curves
    w_curve = [p.delta for p in out["tessellation"]]
    t_curve = [p.delta for p in out["tri-short"]]

    # calibration: the independent brute-force scan reproduces both curves
    # at the small radii and fixes the plateau threshold
    for variant in ("tessellation", "tri-short"):
        cfg = GenConfig(depth=10, variant=variant, strips=1, mode="geometric")
        g = build(cfg)
        for p in out[variant][:2]:  # radii 4 and 8
            ball, _ = ball_subgraph(g, center_vertex(g), p.radius)
            evens = subset_ids(ball, "even")
            want, _ = brute_delta(ball.edges, center_vertex(ball), subset=evens)
            assert p.delta == pytest.approx(want, abs=1e-9), (variant, p.radius)
    plateau = w_curve[1] - w_curve[0]

    w_ok = all(b - a <= plateau + 1e-9
               for a, b in zip(w_curve[1:], w_curve[2:]))
    t_ok = all(b > a + 1e-9 for a, b in zip(t_curve, t_curve[1:]))
    flagged = any(p.flagged for pts in out.values() for p in pts)
    ok = w_ok and t_ok and elapsed < 600.0
    announce(capsys, "A6 hyperbolic/non-hyperbolic dichotomy (radii 4-16)",
             ok, f"W={['%.3f' % d for d in w_curve]} flat, "
                 f"T={['%.3f' % d for d in t_curve]} increasing, "
                 f"frontier-flagged={flagged}, {elapsed:.1f}s")


def test_a7_crossing_profile(capsys):
    per = boundary_crossing_profile("period", 10)
    tri = boundary_crossing_profile("tri-short", 10)
    xs, d = per.data["x"], per.data["distance"]
    assert xs[-1] >= 15

    # oracle calibration of two profile entries
    g = build_period(10, with_boundary=True, mode="geometric")
    for x in (3, 7):
        want = nx_distances(g.edges, g.vertex_at(x, 0))[g.vertex_at(x, 1)]
        got = d[xs.index(x)]
        assert got == pytest.approx(want, abs=1e-9)

    increasing = all(b > a for (xa, a), (xb, b) in
                     zip(zip(xs, d), zip(xs[1:], d[1:])) if xa >= 3)
    above = all(v >= x - 1e-9 for x, v in zip(xs, d) if x >= 4)
    tri_one = all(abs(v - 1.0) <= 1e-9 for v in tri.data["distance"])
    ok = per.passed and tri.passed and increasing and above and tri_one
    announce(capsys, "A7 boundary-line crossing profile (odd x <= 15)",
             ok, f"untriangulated diverges, triangulated crossing = 1")


def test_a8_decomposition_at_cut_vertex(capsys):
    rep = verify_t_decomposition(4, workers=WORKERS)
    g = build_period(4, with_boundary=False, mode="unit")
    w = g.vertex_ids(lambda lab: lab.level == 0)[0]
    want, _ = brute_delta(g.edges, w)
    exact = (rep.constants["delta_whole"] == want
             and rep.constants["delta_whole"]
             == max(rep.constants["delta_left"], rep.constants["delta_right"]))
    ok = rep.passed and exact
    announce(capsys, "A8 delta splits exactly at the cut vertex (depth 4)",
             ok, f"delta={rep.constants['delta_whole']} "
                 f"(brute force over {g.n_vertices}^3 triples)")


def test_a9_tile_degeneration(capsys):
    tiles6 = extract_tiles(build_tessellation(6, 0, "tri-short"))
    rep = tile_statistics(tiles6, 6)
    ratios = {N: extract_tiles(build_tessellation(N, 0, "tri-short"))
              .max_perimeter_inradius_ratio() for N in (3, 4, 5, 6)}
    control = tile_statistics(extract_tiles(build_square_grid(5)), 5,
                              degenerating=False)
    ok = (rep.passed
          and tiles6.all_convex()
          and abs(tiles6.min_area() - 2.0 ** -7) <= 1e-12
          and all(ratios[N] > ratios[N - 1] for N in (4, 5, 6))
          and control.passed
          and abs(control.constants["min_area"] - 1.0) <= 1e-12)
    announce(capsys, "A9 triangulation tiles degenerate (min area 2^-7 at depth 6)",
             ok, f"ratio growth {['%.0f' % ratios[N] for N in (3, 4, 5, 6)]}, "
                 f"control bounded")


def test_a10_worker_determinism(capsys):
    g = build_tessellation(4, 1, "tessellation", mode="geometric")
    ball, _ = ball_subgraph(g, center_vertex(g), 8)
    w = center_vertex(ball)
    delta_texts = {delta_at_base(ball, w, subset="even", workers=k).to_text()
                   for k in (1, 4, 8)}
    lemma_texts = {verify_dist_levels(6, 2, workers=k).to_text()
                   for k in (1, 4, 8)}
    shift_texts = {sup_product_shift(6, 2, workers=k).to_text()
                   for k in (1, 4, 8)}
    ok = len(delta_texts) == 1 and len(lemma_texts) == 1 and len(shift_texts) == 1
    announce(capsys, "A10 byte-identical reports across 1/4/8 workers", ok)
