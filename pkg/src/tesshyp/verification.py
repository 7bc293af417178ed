"""Executable checks for the distance lemmas, product-shift bound,
quasi-isometry estimate, cut-vertex decomposition, boundary-crossing profile,
tile degeneration and strip periodicity.

Each check returns a LemmaReport; failures are report contents, not
exceptions. Unit-mode checks are exact (integer hop counts); geometric checks
use absolute tolerance 1e-9. Checks that read distances near the truncation
cut keep a level margin (default 2) and can re-run at depth N+1 to set the
stability flag.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .generators import build_half_period, build_period, build_tessellation
from .graph import EVEN, LINE, Graph, distance_rows, single_source_distances
from .hyperbolicity import delta_at_base

GEOM_TOL = 1e-9


@dataclass
class LemmaReport:
    check: str
    ranges: dict
    passed: bool
    constants: dict = field(default_factory=dict)
    counterexample: str | None = None
    stable: bool | None = None
    data: dict = field(default_factory=dict)

    def to_text(self) -> str:
        lines = [f"check: {self.check}", f"passed: {self.passed}"]
        for k, v in sorted(self.ranges.items()):
            lines.append(f"range.{k}: {v}")
        for k, v in sorted(self.constants.items()):
            lines.append(f"const.{k}: {_fmt(v)}")
        if self.counterexample is not None:
            lines.append(f"counterexample: {self.counterexample}")
        if self.stable is not None:
            lines.append(f"stable: {self.stable}")
        for k, v in sorted(self.data.items()):
            lines.append(f"data.{k}: {_fmt(v)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "check": self.check,
            "ranges": self.ranges,
            "passed": self.passed,
            "constants": self.constants,
            "counterexample": self.counterexample,
            "stable": self.stable,
            "data": self.data,
        }
        return json.dumps(payload, sort_keys=True)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(str(_fmt(x)) for x in v) + "]"
    return v


def _level_ids(g: Graph, level: int) -> list[int]:
    """Even-level vertex ids ordered by index (height)."""
    ids = g.vertex_ids(lambda lab: lab.kind == EVEN and lab.level == level)
    ids.sort(key=lambda v: g.labels[v].index)
    return ids


def _hop_rows(g: Graph, sources, targets=None, workers: int = 1) -> np.ndarray:
    rows = distance_rows(g, sources, targets=targets, workers=workers)
    return np.rint(rows).astype(np.int64)


def _window(n: int, m: int, k: int) -> tuple[int, int]:
    lo = max((k << m) - (1 << (m + 1)) + 2, 1)
    hi = min((k << m) + (1 << m) - 1, 1 << (n + m))
    return lo, hi


# ---------------------------------------------------------------------------
# distance-window lemma and reachability-count remarks
# ---------------------------------------------------------------------------

def _dist_levels_core(N, M, n_max, workers):
    g = build_half_period(N, "unit")
    passed = True
    counterexample = None
    max_up = 0
    for n in range(1, n_max + 1):
        base = _level_ids(g, 2 * n)
        rows = _hop_rows(g, base, workers=workers)
        for m in range(1, M + 1):
            top = _level_ids(g, 2 * (n + m))
            D = rows[:, top]  # (2^n, 2^{n+m})
            for k in range(1, 2 ** n + 1):
                lo, hi = _window(n, m, k)
                km = np.arange(1, 2 ** (n + m) + 1)
                inside = (km >= lo) & (km <= hi)
                drow = D[k - 1]
                if not (np.all(drow[inside] == 2 * m)
                        and np.all(drow[~inside] >= 2 * m + 2)):
                    passed = False
                    bad = int(np.nonzero((drow == 2 * m) != inside)[0][0]) + 1
                    counterexample = counterexample or (
                        f"window failure at n={n} m={m} k={k} k_m={bad} "
                        f"d={int(drow[bad - 1])}"
                    )
                # upward reachability count
                cnt = int((drow == 2 * m).sum())
                max_up = max(max_up, cnt)
                bound = 2 ** (m + 1) + 2 ** m - 2
                interior = (lo == (k << m) - (1 << (m + 1)) + 2
                            and hi == (k << m) + (1 << m) - 1)
                if cnt > bound or (interior and cnt < 2 ** (m + 1)):
                    passed = False
                    counterexample = counterexample or (
                        f"upward count {cnt} out of range at n={n} m={m} k={k}"
                    )
            # downward: each top vertex reaches <= 3 base vertices, consecutive
            for col in range(D.shape[1]):
                hits = np.nonzero(D[:, col] == 2 * m)[0]
                if hits.size > 3 or (hits.size > 1 and np.any(np.diff(hits) != 1)):
                    passed = False
                    counterexample = counterexample or (
                        f"downward count failure at n={n} m={m} l={col + 1}"
                    )
    return passed, {"max_upward_count": max_up}, counterexample


def verify_dist_levels(N: int, M: int, margin: int = 2, workers: int = 1,
                       stability: bool = False) -> LemmaReport:
    """Hop distance between level 2n and level 2n+2m equals 2m exactly on the
    index window and is >= 2m+2 off it (even parity turns 'greater than 2m+1'
    into >= 2m+2); includes both reachability-count remarks."""
    n_max = N - M - margin
    if n_max < 1:
        raise ValueError("need N >= M + margin + 1")
    passed, consts, cex = _dist_levels_core(N, M, n_max, workers)
    stable = None
    if stability:
        p2, c2, _ = _dist_levels_core(N + 1, M, n_max, workers)
        stable = (p2 == passed and c2 == consts)
    return LemmaReport(
        check="dist_levels_window",
        ranges={"depth": N, "m_max": M, "n_max": n_max, "margin": margin},
        passed=passed,
        constants=consts,
        counterexample=cex,
        stable=stable,
    )


# ---------------------------------------------------------------------------
# logarithmic same-level distance law
# ---------------------------------------------------------------------------

def _log_deviation_core(N, n_max, workers):
    g = build_half_period(N, "unit")
    passed = True
    counterexample = None
    alpha = 0.0
    for n in range(1, n_max + 1):
        ids = _level_ids(g, 2 * n)
        D = _hop_rows(g, ids, targets=ids, workers=workers)
        size = len(ids)
        idx = np.arange(size)
        J = np.abs(idx[:, None] - idx[None, :])
        iu = np.triu_indices(size, k=1)
        jj = J[iu]
        dd = D[iu]
        r = np.floor(np.log2(jj)).astype(np.int64)
        big = jj >= 4
        ok_big = (dd[big] > 4 * r[big] - 8) & (dd[big] <= 4 * r[big] + 4)
        ok_small = dd[~big] <= 6
        if not (np.all(ok_big) and np.all(ok_small)):
            passed = False
            if counterexample is None:
                src = np.nonzero(~ok_big)[0] if not np.all(ok_big) else None
                counterexample = f"log-window failure at level {2 * n}"
                if src is not None and src.size:
                    p = src[0]
                    counterexample += (
                        f" |i-j|={int(jj[big][p])} d={int(dd[big][p])}"
                    )
        dev = np.max(np.abs(dd - 4 * np.log2(jj)))
        alpha = max(alpha, float(dev))
    return passed, {"alpha": alpha}, counterexample


def sup_log_deviation(N: int, margin: int = 2, workers: int = 1,
                      stability: bool = False) -> LemmaReport:
    """Same-level distances track 4*log2 of the index gap: the proof window
    4r-8 < d <= 4r+4 (r = floor(log2 |i-j|)) for gaps >= 4, d <= 6 for gaps
    <= 3; reports the exact empirical deviation alpha."""
    n_max = N - margin
    if n_max < 1:
        raise ValueError("need N >= margin + 1")
    passed, consts, cex = _log_deviation_core(N, n_max, workers)
    stable = None
    if stability:
        p2, c2, _ = _log_deviation_core(N + 1, n_max, workers)
        stable = (p2 == passed and c2 == consts)
    return LemmaReport(
        check="log_deviation",
        ranges={"depth": N, "n_max": n_max, "margin": margin},
        passed=passed,
        constants=consts,
        counterexample=cex,
        stable=stable,
    )


# ---------------------------------------------------------------------------
# Gromov-product shift between a level pair and its lifts
# ---------------------------------------------------------------------------

def _product_shift_core(N, M, n_max, workers):
    g = build_half_period(N, "unit")
    w = g.vertex_ids(lambda lab: lab.level == 0)[0]
    passed = True
    counterexample = None
    beta = 0.0

    # base-point distances: every even vertex sits at hop distance = level
    dw = _hop_rows(g, [w], workers=workers)[0]
    for lvl in range(0, 2 * (n_max + M) + 1, 2):
        for v in _level_ids(g, lvl):
            if dw[v] != lvl:
                passed = False
                counterexample = counterexample or (
                    f"base distance {dw[v]} != level {lvl} at vertex {v}"
                )

    samelevel = {}

    def pair_matrix(lvl):
        if lvl not in samelevel:
            ids = _level_ids(g, lvl)
            samelevel[lvl] = _hop_rows(g, ids, targets=ids, workers=workers)
        return samelevel[lvl]

    for n in range(1, n_max + 1):
        base = _level_ids(g, 2 * n)
        Db = pair_matrix(2 * n)
        cross_rows = _hop_rows(g, base, workers=workers)
        for m in range(1, M + 1):
            top = _level_ids(g, 2 * (n + m))
            cross = cross_rows[:, top]
            Dt = pair_matrix(2 * (n + m))
            lifts = [np.nonzero(cross[i] == 2 * m)[0] for i in range(len(base))]
            for i0, li in enumerate(lifts):
                k = i0 + 1
                lo, hi = _window(n, m, k)
                if li.size and (li[0] + 1 < lo or li[-1] + 1 > hi):
                    passed = False
                    counterexample = counterexample or (
                        f"lift outside window at n={n} m={m} i={k}"
                    )
            for i in range(len(base)):
                li = lifts[i]
                if li.size == 0:
                    continue
                for j in range(i, len(base)):
                    lj = lifts[j]
                    if lj.size == 0:
                        continue
                    block = Dt[np.ix_(li, lj)]
                    center = Db[i, j] / 2.0 + 2 * m
                    shift = max(abs(block.max() / 2.0 - center),
                                abs(block.min() / 2.0 - center))
                    if shift > beta:
                        beta = float(shift)
    return passed, {"beta": beta}, counterexample


def sup_product_shift(N: int, M: int, margin: int = 2, workers: int = 1,
                      stability: bool = False) -> LemmaReport:
    """Lifting a same-level pair up m double-split levels (along hop-2m
    connections) moves its Gromov product at the level-0 base by at most a
    constant; reports the exact empirical shift beta and re-checks the lift
    index window for every lift found."""
    n_max = N - M - margin
    if n_max < 1:
        raise ValueError("need N >= M + margin + 1")
    passed, consts, cex = _product_shift_core(N, M, n_max, workers)
    stable = None
    if stability:
        p2, c2, _ = _product_shift_core(N + 1, M, n_max, workers)
        stable = (p2 == passed and c2 == consts)
    return LemmaReport(
        check="product_shift",
        ranges={"depth": N, "m_max": M, "n_max": n_max, "margin": margin},
        passed=passed,
        constants=consts,
        counterexample=cex,
        stable=stable,
    )


# ---------------------------------------------------------------------------
# unit vs geometric half-period quasi-isometry
# ---------------------------------------------------------------------------

def verify_quasi_isometry(N: int, workers: int = 1) -> LemmaReport:
    """The label-preserving map between the unit and geometric half-period
    truncations distorts no distance below 1x or above sqrt(5)/2 x, and every
    geometric edge length lies in [1, sqrt(5)/2]."""
    gu = build_half_period(N, "unit")
    gg = build_half_period(N, "geometric")
    assert [lab.key() for lab in gu.labels] == [lab.key() for lab in gg.labels]
    ratio = math.sqrt(5.0) / 2.0
    passed = True
    counterexample = None

    lengths = [w for _, _, w in gg.edges]
    if min(lengths) < 1.0 - GEOM_TOL or max(lengths) > ratio + GEOM_TOL:
        passed = False
        counterexample = (
            f"edge length outside [1, sqrt(5)/2]: min={min(lengths)} max={max(lengths)}"
        )

    ids = list(range(gu.n_vertices))
    Du = distance_rows(gu, ids, workers=workers)
    Dg = distance_rows(gg, ids, workers=workers)
    lower_bad = Du > Dg + GEOM_TOL
    upper_bad = Dg > ratio * Du + GEOM_TOL
    if lower_bad.any() or upper_bad.any():
        passed = False
        where = np.argwhere(lower_bad | upper_bad)[0]
        counterexample = counterexample or (
            f"distortion out of range at pair ({where[0]},{where[1]}): "
            f"d_unit={Du[where[0], where[1]]} d_geom={Dg[where[0], where[1]]}"
        )
    off = ~np.eye(len(ids), dtype=bool)
    with np.errstate(invalid="ignore"):
        ratios = np.where(off, Dg, np.nan) / np.where(off, Du, np.nan)
    return LemmaReport(
        check="quasi_isometry",
        ranges={"depth": N},
        passed=passed,
        constants={
            "min_edge_length": float(min(lengths)),
            "max_edge_length": float(max(lengths)),
            "max_distance_ratio": float(np.nanmax(ratios)),
            "min_distance_ratio": float(np.nanmin(ratios)),
        },
        counterexample=counterexample,
    )


# ---------------------------------------------------------------------------
# cut-vertex decomposition of the boundary-free period graph
# ---------------------------------------------------------------------------

def verify_t_decomposition(N: int, subset: str = "all",
                           workers: int = 1) -> LemmaReport:
    """Delta of the mirror-glued boundary-free truncation at the shared
    level-0 base equals the max of the two halves' deltas exactly (unit
    mode): cross-half Gromov products at a cut-vertex base vanish."""
    g = build_period(N, with_boundary=False, mode="unit")
    w = g.vertex_ids(lambda lab: lab.level == 0)[0]

    def side_ids(sign):
        if subset == "even":
            pred = lambda lab: lab.kind == EVEN and sign * lab.level >= 0
        else:
            pred = lambda lab: sign * lab.level >= 0
        return g.vertex_ids(pred)

    whole = delta_at_base(g, w, subset=subset, workers=workers)
    left = delta_at_base(g, w, subset=side_ids(-1), workers=workers)
    right = delta_at_base(g, w, subset=side_ids(+1), workers=workers)
    passed = whole.delta == max(left.delta, right.delta)
    return LemmaReport(
        check="t_decomposition",
        ranges={"depth": N, "subset": subset},
        passed=passed,
        constants={
            "delta_whole": whole.delta,
            "delta_left": left.delta,
            "delta_right": right.delta,
        },
        counterexample=None if passed else (
            f"delta {whole.delta} != max({left.delta}, {right.delta})"
        ),
        data={"witness_whole": list(whole.witness)},
    )


# ---------------------------------------------------------------------------
# boundary-line crossing profile
# ---------------------------------------------------------------------------

def boundary_crossing_profile(variant: str, N: int, margin: int = 2) -> LemmaReport:
    """Geometric distance between the two boundary lines at fixed odd x.

    For the period strip the sequence diverges (strictly increasing past
    x = 1 and >= x for x >= 4); with the short vertical diagonals added the
    crossing costs exactly 1 at every x, which kills the divergence condition.
    """
    if variant == "period":
        g = build_period(N, with_boundary=True, mode="geometric")
    elif variant == "tri-short":
        g = build_tessellation(N, S=0, variant="tri-short", mode="geometric")
    else:
        raise ValueError(f"crossing profile needs 'period' or 'tri-short', got {variant!r}")

    xs = list(range(1, 2 * N - 2 * margin, 2))
    dists = []
    for x in xs:
        u = g.vertex_at(x, 0)
        v = g.vertex_at(x, 1)
        dists.append(float(single_source_distances(g, u).dist[v]))

    passed = True
    counterexample = None
    if min(dists) < 1.0 - GEOM_TOL:
        passed = False
        counterexample = f"crossing below 1: {min(dists)}"
    if variant == "tri-short":
        bad = [x for x, d in zip(xs, dists) if abs(d - 1.0) > GEOM_TOL]
        if bad:
            passed = False
            counterexample = counterexample or f"crossing != 1 at x={bad[0]}"
    else:
        for (x0, d0), (x1, d1) in zip(zip(xs, dists), zip(xs[1:], dists[1:])):
            if x0 >= 3 and d1 <= d0 + GEOM_TOL:
                passed = False
                counterexample = counterexample or (
                    f"profile not increasing: d({x0})={d0} d({x1})={d1}"
                )
        low = [x for x, d in zip(xs, dists) if x >= 4 and d < x - GEOM_TOL]
        if low:
            passed = False
            counterexample = counterexample or f"d({low[0]}) < {low[0]}"
    return LemmaReport(
        check=f"crossing_profile[{variant}]",
        ranges={"depth": N, "margin": margin, "x_max": xs[-1]},
        passed=passed,
        constants={"inf_crossing": float(min(dists))},
        counterexample=counterexample,
        data={"x": xs, "distance": dists},
    )


# ---------------------------------------------------------------------------
# tile degeneration statistics
# ---------------------------------------------------------------------------

def tile_statistics(tiles, depth: int, degenerating: bool = True) -> LemmaReport:
    """Convexity plus the two negative-hypothesis aggregates: with growing
    depth the minimum tile area collapses (below 2^-depth) and the perimeter
    to inradius ratio blows up (at least 2^(depth-2)), so neither bounded-
    geometry hypothesis applies to this family. With ``degenerating=False``
    (control tessellations) the same aggregates are asserted bounded."""
    min_area = tiles.min_area()
    max_ratio = tiles.max_perimeter_inradius_ratio()
    all_convex = tiles.all_convex()
    passed = all_convex
    counterexample = None if all_convex else "non-convex interior tile"
    if degenerating:
        if min_area > 2.0 ** (-depth) + 1e-12:
            passed = False
            counterexample = counterexample or f"min area {min_area} > 2^-{depth}"
        if max_ratio < 2.0 ** (depth - 2):
            passed = False
            counterexample = counterexample or (
                f"max perimeter/inradius {max_ratio} < 2^{depth - 2}"
            )
    else:
        if min_area < 1.0 - 1e-12 or max_ratio > 10.0:
            passed = False
            counterexample = counterexample or (
                f"control tiles degenerate: area {min_area}, ratio {max_ratio}"
            )
    return LemmaReport(
        check="tile_statistics",
        ranges={"depth": depth, "faces": len(tiles.faces)},
        passed=passed,
        constants={"min_area": float(min_area),
                   "max_perimeter_inradius": float(max_ratio)},
        counterexample=counterexample,
    )


# ---------------------------------------------------------------------------
# strip periodicity of the tessellation
# ---------------------------------------------------------------------------

def verify_periodic_shift(g: Graph, N: int, S: int) -> LemmaReport:
    """The vertical unit translation maps each interior strip onto the next
    one exactly; the two line images are disjoint; removing one interior line
    cuts the truncation into exactly two components."""
    if S < 1:
        raise ValueError("need S >= 1")
    from .dyadic import Dyadic

    passed = True
    counterexample = None

    def _ekey(pu, pv):
        return (pu, pv) if pu <= pv else (pv, pu)

    edge_set = {_ekey(g.labels[u].position, g.labels[v].position): w
                for u, v, w in g.edges}

    def shiftable(lab):
        return lab.strip <= S - 1 if lab.kind != LINE else lab.strip <= S

    for i, lab in enumerate(g.labels):
        if not shiftable(lab):
            continue
        target = g.vertex_at(lab.x, lab.y + 1)
        if target is None:
            passed = False
            counterexample = counterexample or f"vertex {i} has no shifted image"
            continue
        tl = g.labels[target]
        if (tl.level, tl.index, tl.kind, tl.strip) != (
                lab.level, lab.index, lab.kind, lab.strip + 1):
            passed = False
            counterexample = counterexample or f"label mismatch under shift at {i}"
    for (pu, pv), w in edge_set.items():
        lu = g.labels[g.vertex_at(*pu)]
        lv = g.labels[g.vertex_at(*pv)]
        if shiftable(lu) and shiftable(lv):
            key = _ekey((pu[0], pu[1] + 1), (pv[0], pv[1] + 1))
            if edge_set.get(key) != w:
                passed = False
                counterexample = counterexample or f"edge missing under shift: {key}"

    line0 = set(g.vertex_ids(lambda lab: lab.kind == LINE and lab.strip == 0))
    line1 = set(g.vertex_ids(lambda lab: lab.kind == LINE and lab.strip == 1))
    if line0 & line1:
        passed = False
        counterexample = counterexample or "line and shifted line share vertices"

    comps = _component_count(g, removed=line0)
    if comps != 2:
        passed = False
        counterexample = counterexample or (
            f"removing the y=0 line leaves {comps} components, expected 2"
        )
    return LemmaReport(
        check="periodic_shift",
        ranges={"depth": N, "strips": S},
        passed=passed,
        constants={"components_after_cut": comps},
        counterexample=counterexample,
    )


def _component_count(g: Graph, removed=frozenset()) -> int:
    seen = set(removed)
    comps = 0
    for start in range(g.n_vertices):
        if start in seen:
            continue
        comps += 1
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            nbrs, _ = g.neighbors(u)
            for v in nbrs:
                v = int(v)
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return comps
