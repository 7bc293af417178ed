"""Gromov products, base-point delta estimation and delta growth curves.

Delta here is the four-point constant of the Gromov product at a fixed base
vertex: the maximum over ordered triples (x, y, z) of

    min{ (x|z)_w, (z|y)_w } - (x|y)_w

clamped below at 0 (degenerate triples already give 0). Trees score exactly 0.
The triple scan is the O(k^3) hot loop; it is partitioned into fixed-size
row chunks so the result and witness are identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, FrontierContact, TriangleViolation
from .generators import GenConfig, build, center_vertex
from .graph import DEFAULT_BUDGET, Graph, ball_subgraph, distance_rows

_SCAN_CHUNK = 64  # rows per unit of work; fixed so merges are worker-independent

#: how often gromov_product clamped a tiny negative value to zero
clamp_warnings = 0


def gromov_product(d_xw: float, d_yw: float, d_xy: float, tol: float = 1e-9) -> float:
    """(x|y)_w from the three pairwise distances."""
    global clamp_warnings
    for lhs, a, b in ((d_xy, d_xw, d_yw), (d_xw, d_xy, d_yw), (d_yw, d_xy, d_xw)):
        if lhs > a + b + tol:
            raise TriangleViolation(
                f"triangle inequality breached: {lhs} > {a} + {b}"
            )
    value = 0.5 * (d_xw + d_yw - d_xy)
    if value < 0.0:
        clamp_warnings += 1
        value = 0.0
    return value


@dataclass(frozen=True)
class DeltaReport:
    base: int
    subset: str
    subset_size: int
    delta: float
    witness: tuple[int, int, int]
    triples_evaluated: int
    lower_bound: bool = False

    def to_text(self) -> str:
        wx, wy, wz = self.witness
        kind = "lower-bound" if self.lower_bound else "exact"
        return (
            f"base={self.base} subset={self.subset} size={self.subset_size} "
            f"delta={self.delta:.17g} witness=({wx},{wy},{wz}) "
            f"triples={self.triples_evaluated} kind={kind}"
        )


@dataclass(frozen=True)
class CurvePoint:
    radius: float
    vertices: int
    delta: float
    witness: tuple[int, int, int]
    flagged: bool


def subset_ids(g: Graph, subset: str, seed: int = 0) -> list[int]:
    """Resolve a subset spec: 'even', 'all' or 'sample:K' (seeded, uniform)."""
    if subset == "all":
        return list(range(g.n_vertices))
    if subset == "even":
        return g.vertex_ids(lambda lab: lab.kind == "even")
    if subset.startswith("sample:"):
        k = int(subset.split(":", 1)[1])
        rng = np.random.default_rng(seed)
        k = min(k, g.n_vertices)
        return sorted(int(v) for v in rng.choice(g.n_vertices, size=k, replace=False))
    raise ValueError(f"unknown subset spec {subset!r}")


def product_matrix(g: Graph, w: int, ids, workers: int = 1,
                   budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Gromov products (ids[i] | ids[j])_w as a dense matrix."""
    ids = list(ids)
    if len(ids) + 1 > budget:
        raise BudgetExceeded(len(ids) + 1, budget)
    dmat = distance_rows(g, ids, targets=ids + [w], workers=workers, budget=budget)
    dw = dmat[:, -1]
    pairwise = dmat[:, :-1]
    return 0.5 * (dw[:, None] + dw[None, :] - pairwise)


def _scan_products(products: np.ndarray, workers: int = 1):
    k = products.shape[0]
    chunks = [(lo, min(lo + _SCAN_CHUNK, k)) for lo in range(0, k, _SCAN_CHUNK)]
    if workers <= 1 or len(chunks) == 1:
        results = [_kernels.delta_scan(products, lo, hi) for lo, hi in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(
                ex.map(lambda c: _kernels.delta_scan(products, c[0], c[1]), chunks)
            )
    best, bx, by, bz = -np.inf, -1, -1, -1
    for val, x, y, z in results:  # chunk order fixed: merge is deterministic
        if val > best or (val == best and (x, y, z) < (bx, by, bz)):
            best, bx, by, bz = val, x, y, z
    return best, (bx, by, bz)


def delta_at_base(g: Graph, w: int, subset="all", seed: int = 0,
                  workers: int = 1, budget: int = DEFAULT_BUDGET) -> DeltaReport:
    """Exact maximum over all ordered triples in the subset; the witness is
    the lexicographically smallest maximizer (by subset position, hence by
    vertex id since the subset is kept sorted). ``subset`` is a spec string
    ('even', 'all', 'sample:K') or an explicit id list."""
    if isinstance(subset, str):
        name = subset
        ids = subset_ids(g, subset, seed=seed)
    else:
        name = "custom"
        ids = sorted(int(v) for v in subset)
    if not ids:
        raise ValueError("empty subset")
    products = product_matrix(g, w, ids, workers=workers, budget=budget)
    best, (bx, by, bz) = _scan_products(products, workers=workers)
    delta = max(0.0, float(best))
    return DeltaReport(
        base=w,
        subset=name,
        subset_size=len(ids),
        delta=delta,
        witness=(ids[bx], ids[by], ids[bz]),
        triples_evaluated=len(ids) ** 3,
        lower_bound=name.startswith("sample:"),
    )


def reevaluate_witness(g: Graph, w: int, witness) -> float:
    """Recompute the witness triple's value from fresh single-source sweeps."""
    x, y, z = witness
    d = distance_rows(g, [x, y, z, w])
    pxz = gromov_product(d[0, w], d[2, w], d[0, z])
    pzy = gromov_product(d[2, w], d[1, w], d[2, y])
    pxy = gromov_product(d[0, w], d[1, w], d[0, y])
    return min(pxz, pzy) - pxy


def base_point_doubling_check(g: Graph, w: int, w2: int, subset: str = "all",
                              workers: int = 1, tol: float = 1e-9) -> dict:
    """Moving the base point at most doubles delta, both ways."""
    r1 = delta_at_base(g, w, subset=subset, workers=workers)
    r2 = delta_at_base(g, w2, subset=subset, workers=workers)
    ok = r2.delta <= 2 * r1.delta + tol and r1.delta <= 2 * r2.delta + tol
    return {"delta_w": r1.delta, "delta_w2": r2.delta, "ok": ok,
            "report_w": r1, "report_w2": r2}


def delta_growth_curve(config: GenConfig, radii, subset: str = "even",
                       seed: int = 0, workers: int = 1,
                       budget: int = DEFAULT_BUDGET,
                       require_interior: bool = False) -> list[CurvePoint]:
    """Delta of balls of growing radius around the level-0 vertex.

    A point is flagged when its ball touches the truncation frontier (the
    metric there may differ from the infinite graph's); with
    ``require_interior`` a flagged point raises FrontierContact instead.
    """
    radii = list(radii)
    if any(b < a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be non-decreasing")
    g = build(config)
    center = center_vertex(g)
    points = []
    for r in radii:
        ball, _ = ball_subgraph(g, center, r)
        flagged = bool(ball.frontier)
        if flagged and require_interior:
            raise FrontierContact(
                f"radius-{r} ball touches the depth-{config.depth} truncation frontier"
            )
        w = center_vertex(ball)
        report = delta_at_base(ball, w, subset=subset, seed=seed,
                               workers=workers, budget=budget)
        points.append(
            CurvePoint(radius=float(r), vertices=ball.n_vertices,
                       delta=report.delta, witness=report.witness,
                       flagged=flagged)
        )
    return points


def curve_csv(points) -> str:
    lines = ["radius,vertices,delta,witness_x,witness_y,witness_z,flagged"]
    for p in points:
        lines.append(
            f"{p.radius:.17g},{p.vertices},{p.delta:.17g},"
            f"{p.witness[0]},{p.witness[1]},{p.witness[2]},{int(p.flagged)}"
        )
    return "\n".join(lines) + "\n"
