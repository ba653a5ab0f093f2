"""Instance generators: the slope lower-bound family G_d, the octahedron,
and seeded random triangulations for tests.
"""

from __future__ import annotations

import random

from .errors import DegreeTooSmall
from .graphs import PlanarGraph

__all__ = ["gen_gd", "gen_octahedron", "gen_random_triangulation"]


def gen_octahedron() -> PlanarGraph:
    """The 4-regular octahedron: complement of a perfect matching on 6."""
    matching = {(0, 3), (1, 4), (2, 5)}
    edges = tuple(
        (u, v)
        for u in range(6)
        for v in range(u + 1, 6)
        if (u, v) not in matching
    )
    return PlanarGraph(6, edges, labels=tuple("uvwxyz"))


def gen_gd(d: int) -> PlanarGraph:
    """Two linked triangles abc / a'b'c', each with a companion cycle of
    length 3(d-3) whose thirds fan into one triangle vertex.

    Hubs a,b,c,a',b',c' end up with degree exactly d; cycle vertices have
    degree 3. Vertex ids: a,b,c = 0,1,2; a',b',c' = 3,4,5; then the two
    cycles.
    """
    if d < 4:
        raise DegreeTooSmall(f"gen_gd needs d >= 4, got {d}")
    m = d - 3
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    labels = ["a", "b", "c", "a'", "b'", "c'"]

    def add_cycle(base: int, hubs: tuple[int, int, int], tag: str):
        k = 3 * m
        for i in range(k):
            edges.append((base + i, base + (i + 1) % k))
            edges.append((hubs[i // m], base + i))
            labels.append(f"{tag}{i}")

    add_cycle(6, (0, 1, 2), "C")
    add_cycle(6 + 3 * m, (3, 4, 5), "C'")
    g = PlanarGraph(6 + 6 * m, tuple(edges), labels=tuple(labels))
    assert g.max_degree == d
    assert all(g.degree(v) == d for v in range(6))
    assert all(g.degree(v) == 3 for v in range(6, g.n))
    return g


def gen_random_triangulation(n: int, seed: int) -> PlanarGraph:
    """Seeded random maximal planar graph: start from K4 and repeatedly
    split a random face with a new vertex (stacked triangulation)."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    rng = random.Random(seed)
    edges = {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}
    faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    for v in range(4, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        edges.update([(a, v), (b, v), (c, v)])
        faces.extend([(a, b, v), (a, c, v), (b, c, v)])
    g = PlanarGraph(n, tuple(sorted(edges)))
    assert len(g.edges) == 3 * n - 6
    return g
