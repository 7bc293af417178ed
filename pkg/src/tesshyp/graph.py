"""Immutable weighted graph with exact vertex metadata and distance engine.

Vertices carry a (level, index, position, kind, strip) label; positions are
exact dyadic rationals and must be pairwise distinct. Unit-length graphs are
routed through an integer BFS engine so lemma checks are exact; weighted
graphs go through Dijkstra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .dyadic import Dyadic
from .errors import (
    BudgetExceeded,
    Disconnected,
    DuplicateEdge,
    FormatMismatch,
    NonPositiveLength,
)

# vertex kinds
EVEN = "even"  # interior vertex at an even level, the v_{2n,i}
ODD = "odd"  # interior vertex at an odd level
LINE = "line"  # vertex on a horizontal boundary line y = integer

DEFAULT_BUDGET = 20_000


@dataclass(frozen=True)
class VertexLabel:
    level: int
    index: int
    x: Dyadic
    y: Dyadic
    kind: str
    strip: int = 0

    @property
    def position(self):
        return (self.x, self.y)

    def key(self):
        """Identity without coordinates, used for cross-graph matching."""
        return (self.level, self.index, self.kind, self.strip)


@dataclass(frozen=True)
class DistanceField:
    source: int
    dist: np.ndarray  # float64, one entry per vertex


class Graph:
    """Validated immutable graph; build through :func:`assemble` only."""

    def __init__(self, labels, indptr, indices, weights, edges, unit_weight, frontier):
        self.labels = labels
        self.indptr = indptr
        self.indices = indices
        self.weights = weights
        self.edges = edges
        self.unit_weight = unit_weight
        self.frontier = frontier
        self._by_position = {lab.position: i for i, lab in enumerate(labels)}
        for arr in (indptr, indices, weights):
            arr.setflags(write=False)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int):
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def vertex_at(self, x, y) -> int | None:
        """Vertex id at exact dyadic position, or None."""
        if isinstance(x, int):
            x = Dyadic.from_int(x)
        if isinstance(y, int):
            y = Dyadic.from_int(y)
        return self._by_position.get((x, y))

    def find(self, **attrs) -> int:
        """First vertex whose label matches all given attributes."""
        for i, lab in enumerate(self.labels):
            if all(getattr(lab, k) == v for k, v in attrs.items()):
                return i
        raise KeyError(f"no vertex with {attrs}")

    def vertex_ids(self, predicate=None):
        if predicate is None:
            return list(range(self.n_vertices))
        return [i for i, lab in enumerate(self.labels) if predicate(lab)]


def assemble(labels, edges, frontier=()) -> Graph:
    """Validate and freeze a graph.

    ``edges`` is an iterable of ((u, v), length). Rejects duplicate unordered
    pairs, self loops, non-positive lengths, repeated positions and
    disconnected input.
    """
    labels = tuple(labels)
    n = len(labels)
    seen_pos = {}
    for i, lab in enumerate(labels):
        if lab.position in seen_pos:
            raise ValueError(
                f"vertices {seen_pos[lab.position]} and {i} share position {lab.position}"
            )
        seen_pos[lab.position] = i

    canon = []
    seen_pairs = set()
    for (u, v), length in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"edge ({u},{v}) has endpoint out of range")
        if u == v:
            raise DuplicateEdge(f"self-loop at vertex {u}")
        if not length > 0:
            raise NonPositiveLength(f"edge ({u},{v}) has length {length}")
        pair = (u, v) if u < v else (v, u)
        if pair in seen_pairs:
            raise DuplicateEdge(f"duplicate edge {pair}")
        seen_pairs.add(pair)
        canon.append((pair[0], pair[1], float(length)))
    canon.sort()

    m = len(canon)
    deg = np.zeros(n, dtype=np.int64)
    for u, v, _ in canon:
        deg[u] += 1
        deg[v] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    indices = np.empty(2 * m, dtype=np.int64)
    weights = np.empty(2 * m, dtype=np.float64)
    cursor = indptr[:-1].copy()
    for u, v, w in canon:
        indices[cursor[u]] = v
        weights[cursor[u]] = w
        cursor[u] += 1
        indices[cursor[v]] = u
        weights[cursor[v]] = w
        cursor[v] += 1

    unit_weight = None
    if m > 0:
        w0 = canon[0][2]
        if all(w == w0 for _, _, w in canon):
            unit_weight = w0

    g = Graph(labels, indptr, indices, weights, tuple(canon), unit_weight, frozenset(frontier))

    if n > 0:
        hops = _kernels.bfs_hops(indptr, indices, 0)
        bad = np.nonzero(hops == _kernels.UNREACHED)[0]
        if bad.size:
            raise Disconnected(f"vertex {bad[0]} ({labels[bad[0]]}) is unreachable")
    return g


def single_source_distances(g: Graph, source: int) -> DistanceField:
    """Exact shortest-path distances from ``source``.

    When all edge lengths equal a constant c the result is c times the BFS
    hop count, so unit-mode distances carry no floating drift.
    """
    if not 0 <= source < g.n_vertices:
        raise IndexError(f"invalid source {source}")
    if g.unit_weight is not None:
        hops = _kernels.bfs_hops(g.indptr, g.indices, source)
        dist = hops.astype(np.float64) * g.unit_weight
    else:
        dist = np.asarray(
            _kernels.dijkstra(g.indptr, g.indices, g.weights, source), dtype=np.float64
        )
    dist.setflags(write=False)
    return DistanceField(source=source, dist=dist)


def distance(g: Graph, u: int, v: int) -> float:
    return float(single_source_distances(g, u).dist[v])


def distance_rows(g: Graph, sources, targets=None, workers: int = 1,
                  budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Distance matrix rows for ``sources`` (columns: ``targets`` or all).

    Materialization is refused above ``budget`` rows/columns; iterate sources
    instead when a family of graphs grows past it.
    """
    sources = list(sources)
    ncols = g.n_vertices if targets is None else len(targets)
    if max(len(sources), ncols) > budget:
        raise BudgetExceeded(max(len(sources), ncols), budget)
    col = None if targets is None else np.asarray(targets, dtype=np.int64)

    def row(s):
        d = single_source_distances(g, s).dist
        return d if col is None else d[col]

    if workers <= 1 or len(sources) < 2:
        rows = [row(s) for s in sources]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(row, sources))
    return np.vstack(rows) if rows else np.empty((0, ncols))


def ball_subgraph(g: Graph, center: int, radius: float, tol: float = 1e-9):
    """Induced subgraph on the closed ball around ``center``.

    Restricted to the connected component containing the center (the induced
    subgraph may be disconnected even though the ball in the metric space is
    not). Labels are preserved; returns (graph, id_map old->new).
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    dist = single_source_distances(g, center).dist
    if g.unit_weight is not None:
        keep = dist <= radius  # exact multiples of the common length
    else:
        keep = dist <= radius + tol
    keep_ids = np.nonzero(keep)[0]
    keep_set = set(int(i) for i in keep_ids)

    adj = {int(i): [] for i in keep_ids}
    sub_edges = []
    for u, v, w in g.edges:
        if u in keep_set and v in keep_set:
            adj[u].append(v)
            adj[v].append(u)
            sub_edges.append((u, v, w))

    # component of the center within the induced subgraph
    comp = {center}
    stack = [center]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in comp:
                comp.add(v)
                stack.append(v)

    old_ids = sorted(comp)
    id_map = {o: i for i, o in enumerate(old_ids)}
    labels = [g.labels[o] for o in old_ids]
    edges = [((id_map[u], id_map[v]), w) for u, v, w in sub_edges
             if u in comp and v in comp]
    frontier = [id_map[o] for o in old_ids if o in g.frontier]
    return assemble(labels, edges, frontier=frontier), id_map


# ---------------------------------------------------------------------------
# serialization: tab-separated vertex table + edge list, round-trips exactly
# ---------------------------------------------------------------------------

def to_text(g: Graph) -> str:
    lines = ["# tesshyp graph v1", f"# vertices {g.n_vertices}"]
    for i, lab in enumerate(g.labels):
        kind = f"{lab.kind}:{lab.strip}"
        lines.append(
            f"{i}\t{lab.level}\t{lab.index}\t{lab.x.num}\t{lab.x.exp}"
            f"\t{lab.y.num}\t{lab.y.exp}\t{kind}"
        )
    lines.append(f"# edges {g.n_edges}")
    for u, v, w in g.edges:
        lines.append(f"{u}\t{v}\t{w:.17g}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    labels = []
    edges = []
    for ln in lines:
        parts = ln.split("\t")
        if len(parts) == 8:
            _, level, index, xn, xe, yn, ye, kindtok = parts
            kind, strip = kindtok.rsplit(":", 1)
            labels.append(
                VertexLabel(
                    level=int(level),
                    index=int(index),
                    x=Dyadic(int(xn), int(xe)),
                    y=Dyadic(int(yn), int(ye)),
                    kind=kind,
                    strip=int(strip),
                )
            )
        elif len(parts) == 3:
            u, v, w = parts
            edges.append(((int(u), int(v)), float(w)))
        else:
            raise FormatMismatch(f"unparseable line: {ln!r}")
    return assemble(labels, edges)
