"""Snapped-packing straight-line pipeline."""

from __future__ import annotations

import math

import numpy as np
import pytest

from fewslopes.circlepack import ALPHA, PackParams, layout_centers, pack_radii
from fewslopes.families import gen_octahedron, gen_random_triangulation
from fewslopes.graphs import PlanarGraph, planar_embed
from fewslopes.jsonio import drawing_to_obj, dumps_canonical
from fewslopes.straightline import (
    SnappedLayout,
    draw_straight,
    orientation_check,
    rstar,
    slope_bound,
    snap,
)
from fewslopes.verify import check_noncrossing, slope_census


def packed(g):
    e = planar_embed(g)
    return layout_centers(pack_radii(e, PackParams(epsilon=1e-12)), e)


class TestScaleConstants:
    def test_rstar_cubic(self):
        assert rstar(3) == pytest.approx(math.sqrt(2.0) * (3.0 + 2.0 * math.sqrt(3.0)))

    def test_rstar_exceeds_one(self):
        for d in range(3, 12):
            assert rstar(d) > 1.0

    def test_edge_length_radius_cubic(self):
        a = ALPHA
        oracle = (3.0 / a) * (2.0 * math.sqrt(2.0) / a + math.sqrt(2.0))
        rep = slope_bound(3)
        assert rep["R"] == pytest.approx(oracle)
        assert rep["R"] == pytest.approx(381.979, abs=5e-3)

    def test_lattice_count_exact_small(self):
        rep = slope_bound(3)
        assert rep["exact"]
        r = rep["R"]
        lim = int(r) + 1
        xs, ys = np.mgrid[-lim : lim + 1, -lim : lim + 1]
        oracle = int(np.count_nonzero(xs * xs + ys * ys <= int(r * r)))
        assert rep["max_slopes"] == oracle

    def test_large_degree_bound_covers_disk(self):
        rep = slope_bound(7)
        assert not rep["exact"]
        assert rep["max_slopes"] >= math.pi * rep["R"] ** 2

    def test_rejects_degenerate_degree(self):
        with pytest.raises(ValueError):
            slope_bound(2)


class TestSnap:
    @pytest.mark.parametrize("g", [gen_octahedron(), gen_random_triangulation(30, 1)])
    def test_grid_exponents_and_displacement(self, g):
        cp = packed(g)
        d = g.max_degree
        sl = snap(cp, d)
        r = np.asarray(cp.radii)
        ratios = r / r.min()
        for i, s in enumerate(sl.exponents):
            assert d ** s <= ratios[i] * (1 + 1e-12)
            assert ratios[i] < d ** (s + 1) * (1 + 1e-12)
            ox, oy = sl.scaled_center(cp, i)
            vx, vy = sl.points[i]
            assert math.hypot(ox - vx, oy - vy) < d ** s / math.sqrt(2.0)

    def test_smallest_disk_lands_at_rstar(self):
        cp = packed(gen_random_triangulation(25, 4))
        sl = snap(cp, 7)
        assert sl.scale * min(cp.radii) == pytest.approx(rstar(7))

    def test_divisibility_enforced(self):
        with pytest.raises(ValueError):
            SnappedLayout(
                d=3, scale=1.0, offset=(0.0, 0.0), exponents=(1,), points=((4, 3),)
            )

    def test_rejects_small_degree(self):
        with pytest.raises(ValueError):
            snap(packed(gen_octahedron()), 2)


class TestOrientation:
    def test_clean_snap_has_no_violations(self):
        g = gen_random_triangulation(40, 6)
        cp = packed(g)
        sl = snap(cp, g.max_degree)
        rep = orientation_check(cp, sl)
        assert rep.ok
        assert rep.faces_checked == len(cp.embedding.faces)

    def test_tampering_flips_a_face(self):
        g = gen_octahedron()
        cp = packed(g)
        sl = snap(cp, 4)
        far = tuple(
            p if i != 0 else (p[0] + 4 ** 9, p[1]) for i, p in enumerate(sl.points)
        )
        bad = SnappedLayout(
            d=sl.d, scale=sl.scale, offset=sl.offset,
            exponents=sl.exponents, points=far,
        )
        assert orientation_check(cp, bad).violations


class TestDrawStraight:
    def test_octahedron_integer_noncrossing(self):
        dr = draw_straight(gen_octahedron())
        assert dr.coord_kind == "int"
        assert all(isinstance(c, int) for p in dr.points.values() for c in p)
        ok, witness = check_noncrossing(dr)
        assert ok and witness is None
        assert dr.meta["d_T"] == 4

    def test_slope_count_within_disk_bound(self):
        g = gen_random_triangulation(30, 2)
        dr = draw_straight(g)
        _, distinct = slope_census(dr)
        assert distinct <= math.ceil(math.pi * dr.meta["R"] ** 2)

    def test_shrunk_edge_vectors(self):
        g = gen_random_triangulation(25, 8)
        dr = draw_straight(g)
        e = planar_embed(g)
        et = e  # triangulation of a triangulation is itself
        d = et.graph.max_degree
        cp = packed(g)
        sl = snap(cp, d)
        big_r = slope_bound(d)["R"]
        for u, v in g.edges:
            g_min = d ** min(sl.exponents[u], sl.exponents[v])
            dx = dr.points[u][0] - dr.points[v][0]
            dy = dr.points[u][1] - dr.points[v][1]
            assert dx % g_min == 0 and dy % g_min == 0
            assert math.hypot(dx / g_min, dy / g_min) <= big_r

    def test_small_graphs_rejected(self):
        with pytest.raises(ValueError):
            draw_straight(PlanarGraph(3, ((0, 1), (1, 2), (0, 2))))

    def test_deterministic_bytes(self):
        g = gen_random_triangulation(20, 13)
        a = dumps_canonical(drawing_to_obj(draw_straight(g)))
        b = dumps_canonical(drawing_to_obj(draw_straight(g)))
        assert a == b
