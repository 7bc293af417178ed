import math

import pytest

from tesshyp.dyadic import Dyadic
from tesshyp.errors import NonPlanarInput
from tesshyp.generators import build_square_grid, build_tessellation
from tesshyp.graph import VertexLabel, assemble
from tesshyp.tiles import extract_tiles

from oracles import shoelace


def test_square_grid_faces():
    tiles = extract_tiles(build_square_grid(3))
    assert len(tiles.faces) == 9
    for f in tiles.faces:
        assert len(f.vertices) == 4
        assert f.area == pytest.approx(1.0)
        assert f.perimeter == pytest.approx(4.0)
        assert f.inradius == pytest.approx(0.5)
        assert f.convex
    assert tiles.min_area() == pytest.approx(1.0)
    assert tiles.max_perimeter_inradius_ratio() == pytest.approx(8.0)
    assert tiles.all_convex()


def test_triangle_metrics():
    # 3-4-5 right triangle: area 6, inradius (3+4-5)/2 = 1
    labels = [
        VertexLabel(0, 0, Dyadic.from_int(0), Dyadic.from_int(0), "even"),
        VertexLabel(0, 1, Dyadic.from_int(4), Dyadic.from_int(0), "even"),
        VertexLabel(0, 2, Dyadic.from_int(4), Dyadic.from_int(3), "even"),
    ]
    edges = [((0, 1), 4.0), ((1, 2), 3.0), ((0, 2), 5.0)]
    tiles = extract_tiles(assemble(labels, edges))
    (f,) = tiles.faces
    assert f.area == pytest.approx(6.0)
    assert f.perimeter == pytest.approx(12.0)
    assert f.inradius == pytest.approx(1.0)


def test_euler_mismatch_raises():
    # straight-line drawing of K5-minus-nothing on bad coordinates crosses
    labels = [
        VertexLabel(0, i, Dyadic.from_int(x), Dyadic.from_int(y), "even")
        for i, (x, y) in enumerate([(0, 0), (2, 0), (2, 2), (0, 2)])
    ]
    edges = [((0, 1), 1.0), ((1, 2), 1.0), ((2, 3), 1.0), ((3, 0), 1.0),
             ((0, 2), 1.0), ((1, 3), 1.0)]  # both diagonals cross
    with pytest.raises(NonPlanarInput):
        extract_tiles(assemble(labels, edges))


def test_areas_match_shoelace_oracle():
    g = build_tessellation(2, 0)
    tiles = extract_tiles(g)
    pos = [(float(l.x), float(l.y)) for l in g.labels]
    for f in tiles.faces:
        assert f.area == pytest.approx(shoelace([pos[v] for v in f.vertices]),
                                       abs=1e-12)


def test_face_areas_sum_to_outer_boundary():
    # interior areas tile the region enclosed by the outer face exactly
    g = build_tessellation(3, 0)
    tiles = extract_tiles(g)
    pos = [(float(l.x), float(l.y)) for l in g.labels]
    hole = -shoelace([pos[v] for v in tiles.outer])
    assert sum(f.area for f in tiles.faces) == pytest.approx(hole, abs=1e-12)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_min_area_halves_with_depth(N):
    tiles = extract_tiles(build_tessellation(N, 0))
    assert tiles.min_area() == pytest.approx(2.0 ** -N)


def test_thin_tiles_blow_up_ratio():
    r3 = extract_tiles(build_tessellation(3, 0)).max_perimeter_inradius_ratio()
    r4 = extract_tiles(build_tessellation(4, 0)).max_perimeter_inradius_ratio()
    assert r4 > 2 * r3 * 0.9  # roughly doubles each level


def test_all_generated_tiles_convex():
    for variant in ("tessellation", "tri-short", "tri-long"):
        assert extract_tiles(build_tessellation(3, 0, variant)).all_convex()


def test_outer_face_excluded():
    tiles = extract_tiles(build_square_grid(2))
    assert len(tiles.outer) >= 8  # boundary cycle of the 2x2 grid
    assert len(tiles.faces) == 4
