"""Instance generators: octahedron, hub-and-cycle family, random stacks."""

from __future__ import annotations

import pytest

from fewslopes.errors import DegreeTooSmall
from fewslopes.families import gen_gd, gen_octahedron, gen_random_triangulation
from fewslopes.graphs import planar_embed


class TestOctahedron:
    def test_shape(self):
        g = gen_octahedron()
        assert g.n == 6 and len(g.edges) == 12
        assert all(g.degree(v) == 4 for v in range(6))
        assert g.labels == ("u", "v", "w", "x", "y", "z")

    def test_is_matching_complement(self):
        g = gen_octahedron()
        non_edges = [
            (u, v)
            for u in range(6)
            for v in range(u + 1, 6)
            if not g.has_edge(u, v)
        ]
        assert len(non_edges) == 3
        assert len({x for e in non_edges for x in e}) == 6

    def test_triangulated(self):
        assert planar_embed(gen_octahedron()).is_triangulated()


class TestHubFamily:
    @pytest.mark.parametrize("d", [4, 5, 7, 9])
    def test_counts(self, d):
        g = gen_gd(d)
        assert g.n == 6 + 6 * (d - 3)
        assert len(g.edges) == 9 + 12 * (d - 3)

    @pytest.mark.parametrize("d", [4, 5, 7])
    def test_degrees(self, d):
        g = gen_gd(d)
        assert all(g.degree(v) == d for v in range(6))
        assert all(g.degree(v) == 3 for v in range(6, g.n))
        assert g.max_degree == d

    def test_labels(self):
        g = gen_gd(5)
        assert g.labels[:6] == ("a", "b", "c", "a'", "b'", "c'")
        assert g.labels[6].startswith("C")

    def test_planar(self):
        planar_embed(gen_gd(6))

    def test_rejects_small_degree(self):
        with pytest.raises(DegreeTooSmall):
            gen_gd(3)


class TestRandomTriangulation:
    @pytest.mark.parametrize("n,seed", [(4, 0), (12, 1), (40, 2), (60, 9)])
    def test_is_triangulation(self, n, seed):
        g = gen_random_triangulation(n, seed)
        assert g.n == n
        assert len(g.edges) == 3 * n - 6
        assert planar_embed(g).is_triangulated()

    def test_deterministic_per_seed(self):
        a = gen_random_triangulation(30, 7)
        b = gen_random_triangulation(30, 7)
        assert a.edges == b.edges

    def test_seeds_differ(self):
        assert (
            gen_random_triangulation(30, 0).edges
            != gen_random_triangulation(30, 1).edges
        )
