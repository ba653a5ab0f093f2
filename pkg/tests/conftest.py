"""Shared instance builders.

Everything here is deterministic given its seed so reruns produce identical
graphs (and therefore byte-identical drawings downstream).
"""

from __future__ import annotations

import random

from fewslopes.families import gen_random_triangulation
from fewslopes.graphs import PlanarGraph


def bounded_stack(n: int, seed: int, dmax: int) -> PlanarGraph:
    """Stacked triangulation that never lets a vertex exceed degree dmax.

    Splits a random face whose corners can all absorb one more edge; stops
    early (fewer than n vertices) once no face qualifies. Small caps saturate
    quickly, which is fine: callers get the largest instance the cap allows.
    """
    if n < 4 or dmax < 4:
        raise ValueError("need n >= 4 and dmax >= 4")
    rng = random.Random(seed)
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    tris = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    deg = [3, 3, 3, 3]
    m = 4
    while m < n:
        feas = [t for t in tris if all(deg[w] + 1 <= dmax for w in t)]
        if not feas:
            break
        a, b, c = feas[rng.randrange(len(feas))]
        tris.remove((a, b, c))
        v = m
        m += 1
        deg.append(3)
        for w in (a, b, c):
            deg[w] += 1
            edges.append((w, v))
        tris.extend([(a, b, v), (a, c, v), (b, c, v)])
    return PlanarGraph(m, tuple(edges))


def capped_planar(n: int, seed: int, d: int) -> PlanarGraph:
    """Planar graph with maximum degree exactly d.

    Removes edges at overfull vertices of a random triangulation, always
    shedding toward the fullest neighbor; the result may lose triangulation
    and even connectivity, which downstream pipelines must tolerate.
    """
    g = gen_random_triangulation(n, seed)
    if g.max_degree < d:
        raise ValueError(f"seed {seed} gives max degree {g.max_degree} < {d}")
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    deg = [len(a) for a in adj]
    while True:
        over = [v for v in range(g.n) if deg[v] > d]
        if not over:
            break
        v = max(over, key=lambda x: (deg[x], x))
        cands = [u for u in adj[v] if deg[u] >= 2] or list(adj[v])
        u = max(cands, key=lambda x: (deg[x], x))
        adj[v].discard(u)
        adj[u].discard(v)
        deg[v] -= 1
        deg[u] -= 1
    edges = tuple(
        sorted((v, u) for v in range(g.n) for u in adj[v] if v < u)
    )
    out = PlanarGraph(g.n, edges)
    assert out.max_degree == d, f"capping landed at {out.max_degree}, wanted {d}"
    return out


def glued_blocks(d: int, seed: int, k: int = 3) -> PlanarGraph:
    """Chain of k bounded-degree blocks sharing cut vertices, max degree <= d."""
    if d < 6:
        raise ValueError("gluing budget needs d >= 6")
    rng = random.Random(seed)
    block_cap = max(4, d - 3)
    parts = [
        bounded_stack(6 + rng.randrange(6), 1000 * seed + i, block_cap)
        for i in range(k)
    ]
    base = parts[0]
    n = base.n
    edges = list(base.edges)
    deg = [base.degree(v) for v in range(n)]
    for part in parts[1:]:
        # attach the block's lightest vertex onto the lightest existing one
        b0 = min(range(part.n), key=lambda v: (part.degree(v), v))
        host = min(
            (v for v in range(n) if deg[v] + part.degree(b0) <= d),
            key=lambda v: (deg[v], v),
        )
        relabel = {}
        for v in range(part.n):
            if v == b0:
                relabel[v] = host
            else:
                relabel[v] = n
                n += 1
                deg.append(0)
        for u, v in part.edges:
            a, b = relabel[u], relabel[v]
            edges.append((a, b))
            deg[a] += 1
            deg[b] += 1
    out = PlanarGraph(n, tuple(edges))
    assert out.max_degree <= d
    return out
