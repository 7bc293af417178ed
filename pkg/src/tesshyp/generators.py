"""Finite truncations of the binary-subdivision graph family.

Variants, all cut at even level 2N:

* ``half-period``   the x >= 0 half with boundary lines removed; unit mode is
                    the combinatorial copy with every edge of length 1.
* ``period-interior`` two mirrored halves glued at the single level-0 vertex,
                    no horizontal boundary edges (that vertex is a cut vertex).
* ``period``        as above plus the y=0 and y=1 boundary lines as chains of
                    horizontal edges between consecutive odd-x line vertices.
* ``tessellation``  2S+1 vertical copies of the period strip, consecutive
                    strips sharing their boundary line vertex-by-vertex.
* ``tri-long``      tessellation plus the horizontal-span-2 diagonal in every
                    quadrilateral face.
* ``tri-short``     tessellation plus the vertical diagonal in every
                    quadrilateral face; the short diagonals along a fixed odd
                    x column chain into a crossing of total length exactly 1.

Coordinates: even level 2n holds vertices i = 1..2^n at height (2i-1)/2^{n+1};
odd level 2n+1 holds vertices j = 0..2^{n+1} at height j/2^{n+1}. Vertex
v_{2n,i} joins the three odd vertices j in {2i-2, 2i-1, 2i} one level up, and
v_{2n+2,k} joins j in {k-1, k} one level down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dyadic import Dyadic
from .errors import InvalidVariantMode
from .graph import EVEN, LINE, ODD, Graph, VertexLabel, assemble

UNIT = "unit"
GEOMETRIC = "geometric"

VARIANTS = (
    "half-period",
    "period-interior",
    "period",
    "tessellation",
    "tri-long",
    "tri-short",
)


@dataclass(frozen=True)
class GenConfig:
    depth: int
    variant: str = "half-period"
    strips: int = 0
    mode: str = UNIT

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.strips < 0:
            raise ValueError("strips must be >= 0")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.mode not in (UNIT, GEOMETRIC):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.variant in ("tri-long", "tri-short") and self.mode != GEOMETRIC:
            raise InvalidVariantMode(
                f"{self.variant} needs geometric mode (diagonal lengths are Euclidean)"
            )


class _Builder:
    """Accumulates vertices keyed by exact position; merges shared copies."""

    def __init__(self, mode: str):
        self.mode = mode
        self.labels: list[VertexLabel] = []
        self.by_pos: dict[tuple, int] = {}
        self.edges: dict[tuple[int, int], float] = {}

    def vertex(self, label: VertexLabel) -> int:
        pos = label.position
        vid = self.by_pos.get(pos)
        if vid is None:
            vid = len(self.labels)
            self.labels.append(label)
            self.by_pos[pos] = vid
        return vid

    def edge(self, a: int, b: int, length: float | None = None):
        if self.mode == UNIT:
            length = 1.0
        elif length is None:
            length = _euclid(self.labels[a], self.labels[b])
        pair = (a, b) if a < b else (b, a)
        self.edges.setdefault(pair, length)

    def finish(self, frontier_pred) -> Graph:
        frontier = [i for i, lab in enumerate(self.labels) if frontier_pred(lab)]
        return assemble(
            self.labels,
            [((u, v), w) for (u, v), w in self.edges.items()],
            frontier=frontier,
        )


def _euclid(a: VertexLabel, b: VertexLabel) -> float:
    dx = float(a.x - b.x)
    dy = float(a.y - b.y)
    return math.hypot(dx, dy)


def _even_label(n: int, i: int, sign: int = 1, strip: int = 0) -> VertexLabel:
    x = Dyadic.from_int(sign * 2 * n)
    y = Dyadic(2 * i - 1, n + 1) + strip
    return VertexLabel(level=sign * 2 * n, index=i, x=x, y=y, kind=EVEN, strip=strip)


def _odd_label(n: int, j: int, sign: int = 1, strip: int = 0,
               line_vertices: bool = False) -> VertexLabel:
    level = sign * (2 * n + 1)
    x = Dyadic.from_int(level)
    y = Dyadic(j, n + 1) + strip
    if line_vertices and y.is_integer():
        return VertexLabel(level=level, index=0, x=x, y=y, kind=LINE, strip=y.num)
    return VertexLabel(level=level, index=j, x=x, y=y, kind=ODD, strip=strip)


def _add_half(b: _Builder, N: int, sign: int, strip: int, line_vertices: bool):
    """One mirrored half of the period strip, translated up by ``strip``."""
    even = {}
    odd = {}
    for n in range(N + 1):
        for i in range(1, 2 ** n + 1):
            even[(n, i)] = b.vertex(_even_label(n, i, sign, strip))
    for n in range(N):
        for j in range(2 ** (n + 1) + 1):
            odd[(n, j)] = b.vertex(_odd_label(n, j, sign, strip, line_vertices))
    for n in range(N):
        for i in range(1, 2 ** n + 1):
            for j in (2 * i - 2, 2 * i - 1, 2 * i):
                b.edge(even[(n, i)], odd[(n, j)])
        for k in range(1, 2 ** (n + 1) + 1):
            for j in (k - 1, k):
                b.edge(odd[(n, j)], even[(n + 1, k)])
    return even, odd


def build_half_period(N: int, mode: str = UNIT) -> Graph:
    """Truncated half-period graph; unit mode is the all-lengths-1 copy."""
    if N < 1:
        raise ValueError("N must be >= 1")
    b = _Builder(mode)
    _add_half(b, N, sign=1, strip=0, line_vertices=False)
    return b.finish(lambda lab: abs(lab.level) == 2 * N)


def _add_period(b: _Builder, N: int, with_boundary: bool, strip: int):
    _add_half(b, N, sign=1, strip=strip, line_vertices=with_boundary)
    _add_half(b, N, sign=-1, strip=strip, line_vertices=with_boundary)
    if with_boundary:
        xs = sorted(s * (2 * n + 1) for n in range(N) for s in (1, -1))
        for y in (strip, strip + 1):
            for x0, x1 in zip(xs, xs[1:]):
                a = b.by_pos[(Dyadic.from_int(x0), Dyadic.from_int(y))]
                c = b.by_pos[(Dyadic.from_int(x1), Dyadic.from_int(y))]
                b.edge(a, c, float(x1 - x0))


def build_period(N: int, with_boundary: bool = True, mode: str = UNIT) -> Graph:
    """Mirror-glued period strip; ``with_boundary=False`` leaves the single
    level-0 vertex as a cut vertex."""
    if N < 1:
        raise ValueError("N must be >= 1")
    b = _Builder(mode)
    _add_period(b, N, with_boundary, strip=0)
    return b.finish(_period_frontier(N, with_boundary))


def _period_frontier(N, with_boundary):
    def pred(lab):
        if abs(lab.level) == 2 * N:
            return True
        return with_boundary and lab.kind == LINE and abs(lab.level) == 2 * N - 1

    return pred


def _add_short_diagonals(b: _Builder, N: int, strip: int):
    # right-pointing quads: vertical diagonal joins consecutive odd-column
    # vertices; left-pointing quads: it joins consecutive even-column ones
    for sign in (1, -1):
        for n in range(N):
            x = Dyadic.from_int(sign * (2 * n + 1))
            for j in range(2 ** (n + 1)):
                a = b.by_pos[(x, Dyadic(j, n + 1) + strip)]
                c = b.by_pos[(x, Dyadic(j + 1, n + 1) + strip)]
                b.edge(a, c)
        for n in range(1, N):
            for i in range(1, 2 ** n):
                a = b.by_pos[_even_label(n, i, sign, strip).position]
                c = b.by_pos[_even_label(n, i + 1, sign, strip).position]
                b.edge(a, c)


def _add_long_diagonals(b: _Builder, N: int, strip: int):
    # the span-2 diagonal of both quad families
    for sign in (1, -1):
        for n in range(N):
            for i in range(1, 2 ** n + 1):
                a = b.by_pos[_even_label(n, i, sign, strip).position]
                for k in (2 * i - 1, 2 * i):
                    c = b.by_pos[_even_label(n + 1, k, sign, strip).position]
                    b.edge(a, c)
        for n in range(1, N):
            xl = Dyadic.from_int(sign * (2 * n - 1))
            xr = Dyadic.from_int(sign * (2 * n + 1))
            for i in range(1, 2 ** n):
                a = b.by_pos[(xl, Dyadic(i, n) + strip)]
                c = b.by_pos[(xr, Dyadic(2 * i, n + 1) + strip)]
                b.edge(a, c)


def build_tessellation(N: int, S: int = 0, variant: str = "tessellation",
                       mode: str = GEOMETRIC) -> Graph:
    """Stack of 2S+1 period strips sharing boundary lines, with optional
    triangulating diagonals."""
    if variant not in ("tessellation", "tri-long", "tri-short"):
        raise ValueError(f"not a tessellation variant: {variant!r}")
    if variant != "tessellation" and mode != GEOMETRIC:
        raise InvalidVariantMode(
            f"{variant} needs geometric mode (diagonal lengths are Euclidean)"
        )
    if N < 1 or S < 0:
        raise ValueError("need N >= 1 and S >= 0")
    b = _Builder(mode)
    for k in range(-S, S + 1):
        _add_period(b, N, with_boundary=True, strip=k)
    if variant == "tri-short":
        for k in range(-S, S + 1):
            _add_short_diagonals(b, N, k)
    elif variant == "tri-long":
        for k in range(-S, S + 1):
            _add_long_diagonals(b, N, k)

    def frontier(lab):
        if abs(lab.level) == 2 * N:
            return True
        if lab.kind == LINE and abs(lab.level) == 2 * N - 1:
            return True
        # outermost boundary lines of the slab
        return lab.kind == LINE and lab.strip in (-S, S + 1)

    return b.finish(frontier)


def build(config: GenConfig) -> Graph:
    if config.variant == "half-period":
        return build_half_period(config.depth, config.mode)
    if config.variant == "period-interior":
        return build_period(config.depth, with_boundary=False, mode=config.mode)
    if config.variant == "period":
        return build_period(config.depth, with_boundary=True, mode=config.mode)
    return build_tessellation(config.depth, config.strips, config.variant, config.mode)


def build_square_grid(n: int, mode: str = GEOMETRIC) -> Graph:
    """n x n unit square grid; control input whose tiles are uniform."""
    labels = []
    ids = {}
    for x in range(n + 1):
        for y in range(n + 1):
            ids[(x, y)] = len(labels)
            labels.append(
                VertexLabel(level=x, index=y, x=Dyadic.from_int(x),
                            y=Dyadic.from_int(y), kind=EVEN)
            )
    edges = []
    for x in range(n + 1):
        for y in range(n + 1):
            if x < n:
                edges.append(((ids[(x, y)], ids[(x + 1, y)]), 1.0))
            if y < n:
                edges.append(((ids[(x, y)], ids[(x, y + 1)]), 1.0))
    return assemble(labels, edges)


def center_vertex(g: Graph) -> int:
    """The level-0 vertex v_{0,1} of strip 0 (or the grid middle)."""
    vid = g.vertex_at(0, Dyadic(1, 1))
    if vid is None:
        raise KeyError("graph has no level-0 vertex at height 1/2")
    return vid
