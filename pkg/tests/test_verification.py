import json
import math

import pytest

from tesshyp.generators import GenConfig, build, build_square_grid, build_tessellation
from tesshyp.tiles import extract_tiles
from tesshyp.verification import (
    LemmaReport,
    _window,
    boundary_crossing_profile,
    sup_log_deviation,
    sup_product_shift,
    tile_statistics,
    verify_dist_levels,
    verify_periodic_shift,
    verify_quasi_isometry,
    verify_t_decomposition,
)


class TestWindow:
    def test_hand_computed(self):
        # n=2, m=1, k=3: window max(6-4+2,1)=4 .. min(6+1, 8)=7
        assert _window(2, 1, 3) == (4, 7)
        # clipped at the left edge for k=1
        assert _window(3, 2, 1) == (1, 7)

    def test_first_level_jump(self):
        # n=1, m=1: k=1 -> [1, 3], k=2 -> [2, 4]
        assert _window(1, 1, 1) == (1, 3)
        assert _window(1, 1, 2) == (2, 4)


class TestReports:
    def test_text_and_json(self):
        r = LemmaReport(check="demo", ranges={"depth": 3}, passed=True,
                        constants={"alpha": 1.5}, stable=True)
        text = r.to_text()
        assert "check: demo" in text
        assert "const.alpha: 1.5" in text
        assert "stable: True" in text
        payload = json.loads(r.to_json())
        assert payload["passed"] is True
        assert payload["constants"]["alpha"] == 1.5


class TestDistLevels:
    def test_small_pass(self):
        r = verify_dist_levels(5, 2)
        assert r.passed
        assert r.counterexample is None
        assert r.ranges["n_max"] == 1
        assert r.constants["max_upward_count"] <= 2 ** 3 + 2 ** 2 - 2

    def test_stability_flag(self):
        r = verify_dist_levels(5, 2, stability=True)
        assert r.stable is True

    def test_range_validation(self):
        with pytest.raises(ValueError):
            verify_dist_levels(3, 2)


class TestLogDeviation:
    def test_small_pass(self):
        r = sup_log_deviation(6)
        assert r.passed
        assert 0 < r.constants["alpha"] <= 12.0

    def test_alpha_grows_then_saturates(self):
        a5 = sup_log_deviation(5).constants["alpha"]
        a7 = sup_log_deviation(7).constants["alpha"]
        assert a7 >= a5


class TestProductShift:
    def test_small_pass(self):
        r = sup_product_shift(6, 2)
        assert r.passed
        assert r.constants["beta"] <= 16.0

    def test_stability(self):
        r = sup_product_shift(6, 2, stability=True)
        assert r.stable is True


class TestQuasiIsometry:
    def test_pass_and_constants(self):
        r = verify_quasi_isometry(4)
        assert r.passed
        assert r.constants["min_edge_length"] >= 1.0 - 1e-12
        assert r.constants["max_edge_length"] <= math.sqrt(5) / 2 + 1e-12
        assert r.constants["min_distance_ratio"] >= 1.0 - 1e-9
        assert r.constants["max_distance_ratio"] <= math.sqrt(5) / 2 + 1e-9


class TestTDecomposition:
    def test_exact_equality(self):
        r = verify_t_decomposition(2)
        assert r.passed
        assert r.constants["delta_whole"] == max(r.constants["delta_left"],
                                                 r.constants["delta_right"])

    def test_even_subset_variant(self):
        assert verify_t_decomposition(2, subset="even").passed


class TestCrossing:
    def test_period_diverges(self):
        r = boundary_crossing_profile("period", 6)
        assert r.passed
        d = r.data["distance"]
        assert d[0] == pytest.approx(math.sqrt(5))
        assert all(b > a for a, b in zip(d[1:], d[2:]))

    def test_triangulated_crossing_is_one(self):
        r = boundary_crossing_profile("tri-short", 6)
        assert r.passed
        assert all(abs(x - 1.0) <= 1e-9 for x in r.data["distance"])
        assert r.constants["inf_crossing"] == pytest.approx(1.0)

    def test_variant_validation(self):
        with pytest.raises(ValueError):
            boundary_crossing_profile("tessellation", 4)


class TestTiles:
    def test_degenerating_family(self):
        for N in (3, 4):
            tiles = extract_tiles(build_tessellation(N, 0, "tri-short"))
            r = tile_statistics(tiles, N)
            assert r.passed
            assert r.constants["min_area"] == pytest.approx(2.0 ** -(N + 1))

    def test_control_grid_bounded(self):
        tiles = extract_tiles(build_square_grid(4))
        r = tile_statistics(tiles, 4, degenerating=False)
        assert r.passed
        assert r.constants["min_area"] == pytest.approx(1.0)

    def test_control_criteria_fail_on_degenerate_input(self):
        tiles = extract_tiles(build_tessellation(4, 0, "tri-short"))
        r = tile_statistics(tiles, 4, degenerating=False)
        assert not r.passed
        assert "degenerate" in r.counterexample


class TestPeriodicShift:
    def test_pass(self):
        g = build_tessellation(3, 1)
        r = verify_periodic_shift(g, 3, 1)
        assert r.passed
        assert r.constants["components_after_cut"] == 2

    def test_wider_slab(self):
        g = build_tessellation(2, 2)
        assert verify_periodic_shift(g, 2, 2).passed

    def test_needs_multiple_strips(self):
        with pytest.raises(ValueError):
            verify_periodic_shift(build_tessellation(2, 0), 2, 0)


def test_full_suite_on_build_dispatch():
    # every public check accepts the graphs the CLI hands it
    g = build(GenConfig(depth=3, variant="tessellation", strips=1,
                        mode="geometric"))
    assert verify_periodic_shift(g, 3, 1).passed
