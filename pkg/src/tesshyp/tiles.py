"""Planar face extraction and per-tile metrics.

Faces come from the angular rotation system of the straight-line embedding:
neighbors are sorted by angle around each vertex and each directed edge is
followed by the next edge clockwise around its head, which traces every face
boundary once with the interior on the left. The outer face has the most
negative signed area and is excluded from the tile set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPlanarInput
from .graph import Graph


@dataclass(frozen=True)
class Face:
    vertices: tuple[int, ...]  # counterclockwise cycle
    area: float
    perimeter: float
    inradius: float
    convex: bool


@dataclass(frozen=True)
class TileSet:
    faces: tuple[Face, ...]
    outer: tuple[int, ...]

    def min_area(self) -> float:
        return min(f.area for f in self.faces)

    def max_perimeter_inradius_ratio(self) -> float:
        return max(f.perimeter / f.inradius for f in self.faces)

    def all_convex(self) -> bool:
        return all(f.convex for f in self.faces)


def extract_tiles(g: Graph, tol: float = 1e-9) -> TileSet:
    """Faces of the straight-line embedding of ``g``.

    Requires planar coordinates with no crossing edges (true for every
    generated variant); raises NonPlanarInput when the face count contradicts
    Euler's formula.
    """
    n = g.n_vertices
    pos = np.array([(float(lab.x), float(lab.y)) for lab in g.labels])

    # rotation system: neighbors of each vertex in ccw angular order
    rot: list[list[int]] = []
    rank: list[dict[int, int]] = []
    for v in range(n):
        nbrs, _ = g.neighbors(v)
        nbrs = list(int(u) for u in nbrs)
        nbrs.sort(key=lambda u: math.atan2(pos[u, 1] - pos[v, 1], pos[u, 0] - pos[v, 0]))
        rot.append(nbrs)
        rank.append({u: i for i, u in enumerate(nbrs)})

    visited = set()
    cycles = []
    for u0 in range(n):
        for v0 in rot[u0]:
            if (u0, v0) in visited:
                continue
            cycle = []
            u, v = u0, v0
            while (u, v) not in visited:
                visited.add((u, v))
                cycle.append(u)
                # next edge clockwise from (v, u) around v
                i = rank[v][u]
                w = rot[v][(i - 1) % len(rot[v])]
                u, v = v, w
            cycles.append(cycle)

    if g.n_vertices - g.n_edges + len(cycles) != 2:
        raise NonPlanarInput(
            f"face traversal found {len(cycles)} faces; Euler's formula needs "
            f"{2 - g.n_vertices + g.n_edges}"
        )

    signed = [_signed_area(pos[c]) for c in cycles]
    outer_idx = int(np.argmin(signed))
    faces = []
    for idx, cycle in enumerate(cycles):
        if idx == outer_idx:
            continue
        pts = pos[cycle]
        area = signed[idx]
        if area <= 0:
            raise NonPlanarInput(f"interior face with non-positive area: {cycle}")
        perim = float(
            np.sum(np.hypot(*(np.roll(pts, -1, axis=0) - pts).T))
        )
        convex = _is_convex(pts, tol)
        inradius = _chebyshev_radius(pts, tol) if convex else float("nan")
        cycle = _canonical_rotation(cycle)
        faces.append(Face(tuple(cycle), float(area), perim, inradius, convex))
    faces.sort(key=lambda f: f.vertices)
    return TileSet(tuple(faces), tuple(_canonical_rotation(cycles[outer_idx])))


def _canonical_rotation(cycle):
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def _signed_area(pts) -> float:
    x = pts[:, 0]
    y = pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _is_convex(pts, tol) -> bool:
    m = len(pts)
    if m < 3:
        return False
    for i in range(m):
        a, b, c = pts[i], pts[(i + 1) % m], pts[(i + 2) % m]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if cross < -tol:  # ccw cycle: all turns left (colinear allowed)
            return False
    return True


def _chebyshev_radius(pts, tol) -> float:
    """Largest inscribed circle radius of a convex ccw polygon.

    The optimum is attained with three tight edge constraints (or two parallel
    ones, in which case a third is tight at an endpoint of the optimal
    segment), so enumerating edge triples is exact without an LP solver.
    """
    m = len(pts)
    # inward half-planes a.x + r <= b for unit inward normals
    A = np.empty((m, 2))
    bvec = np.empty(m)
    for i in range(m):
        p, q = pts[i], pts[(i + 1) % m]
        e = q - p
        norm = math.hypot(e[0], e[1])
        nrm = np.array([e[1], -e[0]]) / norm  # outward for ccw; distance = b - a.x
        A[i] = nrm
        bvec[i] = nrm @ p

    best = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                M = np.array(
                    [
                        [A[i, 0], A[i, 1], 1.0],
                        [A[j, 0], A[j, 1], 1.0],
                        [A[k, 0], A[k, 1], 1.0],
                    ]
                )
                rhs = np.array([bvec[i], bvec[j], bvec[k]])
                try:
                    sol = np.linalg.solve(M, rhs)
                except np.linalg.LinAlgError:
                    continue
                cx, cy, r = sol
                if r <= best:
                    continue
                if np.all(A @ np.array([cx, cy]) + r <= bvec + tol):
                    best = float(r)
    return best
