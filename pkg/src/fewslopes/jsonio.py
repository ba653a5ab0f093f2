"""JSON serialization for graphs, embeddings, packings and drawings.

All emitters produce canonical bytes: sorted keys, no whitespace, exact
rationals carried as "num/den" strings alongside a decimal rendering.
parse(emit(x)) round-trips every object.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .circlepack import CirclePacking
from .drawing import Drawing, EdgeArc
from .graphs import Embedding, PlanarGraph

__all__ = [
    "dumps_canonical",
    "graph_to_obj",
    "graph_from_obj",
    "embedding_to_obj",
    "embedding_from_obj",
    "packing_to_obj",
    "packing_from_obj",
    "drawing_to_obj",
    "drawing_from_obj",
]


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _num_to_obj(x, kind: str):
    if kind == "int":
        return int(x)
    if kind == "rational":
        f = Fraction(x)
        return {"dec": format(float(f), ".17g"), "frac": f"{f.numerator}/{f.denominator}"}
    return float(x)


def _num_from_obj(o, kind: str):
    if kind == "int":
        return int(o)
    if kind == "rational":
        num, den = o["frac"].split("/")
        return Fraction(int(num), int(den))
    return float(o)


def _point_to_obj(p, kind):
    return [_num_to_obj(p[0], kind), _num_to_obj(p[1], kind)]


def _point_from_obj(o, kind):
    return (_num_from_obj(o[0], kind), _num_from_obj(o[1], kind))


# --- graphs / embeddings -----------------------------------------------------------


def graph_to_obj(g: PlanarGraph) -> dict:
    obj = {"n": g.n, "edges": [[u, v] for u, v in g.edges]}
    if g.labels is not None:
        obj["labels"] = list(g.labels)
    return obj


def graph_from_obj(obj) -> PlanarGraph:
    labels = tuple(obj["labels"]) if "labels" in obj else None
    return PlanarGraph(obj["n"], tuple((u, v) for u, v in obj["edges"]), labels=labels)


def embedding_to_obj(e: Embedding) -> dict:
    g = e.graph
    obj = graph_to_obj(g)
    obj["rotation"] = [
        [g.edge_index[tuple(sorted((v, u)))] for u in e.rotation[v]]
        for v in range(g.n)
    ]
    obj["outer_face"] = list(e.outer_face)
    return obj


def embedding_from_obj(obj) -> Embedding:
    g = graph_from_obj(obj)
    rotation = tuple(
        tuple(
            g.edges[i][0] if g.edges[i][1] == v else g.edges[i][1]
            for i in obj["rotation"][v]
        )
        for v in range(g.n)
    )
    return Embedding(g, rotation, tuple(obj["outer_face"]))


# --- packings ----------------------------------------------------------------------


def packing_to_obj(cp) -> dict:
    return {
        "centers": [[float(x), float(y)] for x, y in cp.centers],
        "radii": [float(r) for r in cp.radii],
        "outer": list(cp.outer),
        "epsilon": float(cp.epsilon),
    }


def packing_from_obj(obj) -> CirclePacking:
    # the embedding is deliberately not serialized; parsed packings carry None
    return CirclePacking(
        centers=tuple((float(x), float(y)) for x, y in obj["centers"]),
        radii=tuple(float(r) for r in obj["radii"]),
        outer=tuple(obj["outer"]),
        epsilon=float(obj["epsilon"]),
    )


# --- drawings ----------------------------------------------------------------------


def drawing_to_obj(dr: Drawing) -> dict:
    kind = dr.coord_kind
    n = len(dr.points)
    if sorted(dr.points) != list(range(n)):
        raise ValueError("drawing points must cover vertex ids 0..n-1")
    edges = []
    for a in dr.edges:
        eo = {
            "u": a.u,
            "v": a.v,
            "poly": [_point_to_obj(p, kind) for p in a.poly],
        }
        if a.slope_indices is not None:
            eo["slope_indices"] = list(a.slope_indices)
        edges.append(eo)
    return {
        "method": dr.method,
        "coord_kind": kind,
        "points": [_point_to_obj(dr.points[v], kind) for v in range(n)],
        "edges": edges,
        "meta": _meta_to_obj(dr.meta),
    }


def _infer_kind(obj) -> str:
    nums = [c for p in obj["points"] for c in p]
    nums += [c for eo in obj["edges"] for p in eo["poly"] for c in p]
    if any(isinstance(c, dict) for c in nums):
        return "rational"
    if all(isinstance(c, int) and not isinstance(c, bool) for c in nums):
        return "int"
    return "float"


def drawing_from_obj(obj) -> Drawing:
    # coord_kind and meta are our extensions; hand-written files may omit them
    kind = obj.get("coord_kind") or _infer_kind(obj)
    points = {
        v: _point_from_obj(p, kind) for v, p in enumerate(obj["points"])
    }
    arcs = []
    for eo in obj["edges"]:
        arcs.append(
            EdgeArc(
                eo["u"],
                eo["v"],
                tuple(_point_from_obj(p, kind) for p in eo["poly"]),
                tuple(eo["slope_indices"]) if "slope_indices" in eo else None,
            )
        )
    return Drawing(obj["method"], points, tuple(arcs), kind, dict(obj.get("meta", {})))


def _meta_to_obj(meta):
    def conv(x):
        if isinstance(x, dict):
            return {str(k): conv(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [conv(v) for v in x]
        if isinstance(x, Fraction):
            return {"dec": format(float(x), ".17g"), "frac": f"{x.numerator}/{x.denominator}"}
        if isinstance(x, bool) or x is None:
            return x
        if isinstance(x, (int, float, str)):
            return x
        return str(x)

    return conv(meta)
