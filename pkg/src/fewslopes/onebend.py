"""T-shape contact representations and one-bend drawings.

Every vertex becomes a T: a horizontal hat through its center plus a vertical
leg hanging below. Following a canonical order top-down, each new vertex slots
its hat between the legs of its two extreme earlier neighbors and catches the
legs of the middle ones, so T-shapes touch exactly when vertices are adjacent.

Drawn edges replace the right-angle contact path by two segments meeting
where an almost-horizontal line (slope -1/(2iN)) through the hat-side vertex
crosses an almost-vertical line (slope 2jN) through the leg-side vertex; the
indices i, j come from the per-vertex contact numbering, giving at most 2d
distinct slopes, and the bend stays within distance 1/2 of the contact path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .drawing import Drawing, EdgeArc
from .errors import RetractionFailed
from .graphs import Embedding, PlanarGraph, canonical_order, planar_embed, triangulate

__all__ = [
    "TShape",
    "Contact",
    "TShapeRep",
    "ContactNumbering",
    "slope_alpha",
    "slope_beta",
    "tshape_representation",
    "contact_numbering",
    "draw_onebend",
]


def slope_alpha(i: int, n: int) -> Fraction:
    """Almost-horizontal slope family: line from the origin to (2in, -1)."""
    return Fraction(-1, 2 * i * n)


def slope_beta(i: int, n: int) -> Fraction:
    """Almost-vertical slope family: line from the origin to (1, 2in)."""
    return Fraction(2 * i * n)


@dataclass(frozen=True)
class TShape:
    """Hat (horizontal through the center) plus leg (vertical below it)."""

    center: tuple[int, int]
    hat_left: tuple[int, int]
    hat_right: tuple[int, int]
    leg_bottom: tuple[int, int]

    def __post_init__(self):
        cx, cy = self.center
        if self.hat_left == self.hat_right == self.leg_bottom == self.center:
            return  # degenerate singleton
        if self.hat_left[1] != cy or self.hat_right[1] != cy:
            raise ValueError("hat must be horizontal through the center")
        if not self.hat_left[0] < cx < self.hat_right[0]:
            raise ValueError("center must be strictly interior to the hat")
        if self.leg_bottom[0] != cx or self.leg_bottom[1] >= cy:
            raise ValueError("leg must hang strictly below the center")


@dataclass(frozen=True)
class Contact:
    """Single tangency point of edge (u, v), u < v; it lies on hat_vertex's
    hat and on the other endpoint's leg."""

    u: int
    v: int
    point: tuple[int, int]
    hat_vertex: int

    @property
    def leg_vertex(self) -> int:
        return self.v if self.hat_vertex == self.u else self.u


@dataclass(frozen=True)
class TShapeRep:
    shapes: tuple[TShape, ...]
    contacts: tuple[Contact, ...]
    grid: tuple[int, int]
    d_t: int

    @property
    def n(self) -> int:
        return len(self.shapes)

    def contacts_at(self, v: int) -> list[int]:
        return [i for i, c in enumerate(self.contacts) if v in (c.u, c.v)]


@dataclass(frozen=True)
class ContactNumbering:
    """Per-vertex contact order along the ccw boundary walk of the T."""

    orders: tuple[tuple[int, ...], ...]  # orders[v] = indices into rep.contacts

    @cached_property
    def _rank(self) -> dict[tuple[int, int], int]:
        out = {}
        for v, row in enumerate(self.orders):
            for rank, ci in enumerate(row, start=1):
                out[(v, ci)] = rank
        return out

    def index_at(self, v: int, contact_idx: int) -> int:
        """1-based index of the contact in v's traversal."""
        return self._rank[(v, contact_idx)]


# --- construction ---------------------------------------------------------


def _build_k1() -> TShapeRep:
    t = TShape((0, 0), (0, 0), (0, 0), (0, 0))
    return TShapeRep((t,), (), (1, 1), 0)


def _build_k2() -> TShapeRep:
    # vertex 0 on top, its leg resting on vertex 1's hat
    s0 = TShape(center=(4, 4), hat_left=(3, 4), hat_right=(5, 4), leg_bottom=(4, 2))
    s1 = TShape(center=(2, 2), hat_left=(1, 2), hat_right=(5, 2), leg_bottom=(2, 1))
    c = Contact(0, 1, (4, 2), hat_vertex=1)
    return TShapeRep((s0, s1), (c,), (5, 4), 1)


def tshape_representation(e: Embedding) -> TShapeRep:
    """Contact representation by T-shapes: tangent iff adjacent.

    Built on a triangulation of e via canonical order; every hat end and leg
    bottom is then retracted past its outermost contact belonging to a real
    edge (half-unit stub when none), which erases the contacts created by
    auxiliary triangulation edges. The iff condition is re-verified exactly
    on the final integer coordinates; on failure the grid is refined x4 and
    retraction retried.
    """
    g = e.graph
    if g.n == 1:
        return _build_k1()
    if g.n == 2:
        return _build_k2()
    et = e if e.is_triangulated() else triangulate(e)
    co = canonical_order(et)
    n_rep = et.graph.n

    order = co.order
    rows = {v: n_rep - i for i, v in enumerate(order)}  # first vertex on top row
    v1, v2 = order[0], order[1]
    legx: dict[int, Fraction] = {v1: Fraction(0), v2: Fraction(1)}

    # tips: hat end sits exactly on a support leg; rests: a middle leg lands
    # on the hat's top. Contact point is always (leg column, hat row).
    hat_tip: dict[int, dict[str, tuple[int, bool] | None]] = {
        v: {"left": None, "right": None} for v in range(n_rep)
    }
    hat_rests: dict[int, list[tuple[int, bool]]] = {v: [] for v in range(n_rep)}
    leg_marks: dict[int, list[tuple[int, bool]]] = {v: [] for v in range(n_rep)}
    recs: list[tuple[int, int, bool]] = []  # (hat_v, leg_v, required)

    def required(a: int, b: int) -> bool:
        return max(a, b) < g.n and g.has_edge(min(a, b), max(a, b))

    def add_tip(hat_v: int, leg_v: int, side: str):
        req = required(hat_v, leg_v)
        assert hat_tip[hat_v][side] is None
        hat_tip[hat_v][side] = (leg_v, req)
        leg_marks[leg_v].append((rows[hat_v], req))
        recs.append((hat_v, leg_v, req))

    def add_rest(hat_v: int, leg_v: int):
        req = required(hat_v, leg_v)
        hat_rests[hat_v].append((leg_v, req))
        leg_marks[leg_v].append((rows[hat_v], req))
        recs.append((hat_v, leg_v, req))

    # the v1-v2 edge: v2's hat reaches left to v1's leg
    add_tip(hat_v=v2, leg_v=v1, side="left")

    contour = [v1, v2]
    for i in range(2, n_rep):
        v = order[i]
        sup = list(co.support[i])
        if legx[sup[0]] > legx[sup[-1]]:
            sup.reverse()
        xs = [legx[w] for w in sup]
        assert all(a < b for a, b in zip(xs, xs[1:])), "support columns not monotone"
        lo = contour.index(sup[0])
        assert contour[lo : lo + len(sup)] == sup, "support not contiguous on contour"

        w_p, mids, w_q = sup[0], sup[1:-1], sup[-1]
        add_tip(hat_v=v, leg_v=w_p, side="left")
        add_tip(hat_v=v, leg_v=w_q, side="right")
        for w in mids:
            add_rest(hat_v=v, leg_v=w)
        # own column: midpoint of the widest free gap inside the hat
        seq = xs[:1] + [legx[w] for w in mids] + xs[-1:]
        j = max(range(len(seq) - 1), key=lambda t: (seq[t + 1] - seq[t], -t))
        legx[v] = (seq[j] + seq[j + 1]) / 2
        contour[lo : lo + len(sup)] = [w_p, v, w_q]

    cols = sorted(set(legx.values()))
    rank = {x: i + 1 for i, x in enumerate(cols)}

    for attempt in range(4):
        mult = 4 ** attempt
        half = Fraction(1, 2)
        shapes = []
        for v in range(g.n):
            cx = rank[legx[v]] * mult
            cy = rows[v] * mult

            def end(side: str, outermost, nudge):
                tip = hat_tip[v][side]
                if tip is not None and tip[1]:
                    return Fraction(rank[legx[tip[0]]] * mult)
                rest_cols = [rank[legx[w]] * mult for w, req in hat_rests[v] if req]
                rest_cols = [c for c in rest_cols if (c < cx if side == "left" else c > cx)]
                if rest_cols:
                    return Fraction(outermost(rest_cols)) + nudge
                return Fraction(cx) + nudge

            hx1 = end("left", min, -half)
            hx2 = end("right", max, half)
            req_rows = [r * mult for r, req in leg_marks[v] if req]
            ly = Fraction(min(req_rows)) if req_rows else Fraction(cy) - half
            shapes.append(
                TShape(
                    center=(2 * cx, 2 * cy),
                    hat_left=(int(2 * hx1), 2 * cy),
                    hat_right=(int(2 * hx2), 2 * cy),
                    leg_bottom=(2 * cx, int(2 * ly)),
                )
            )

        contacts = sorted(
            (
                Contact(
                    min(h, l),
                    max(h, l),
                    (2 * rank[legx[l]] * mult, 2 * rows[h] * mult),
                    hat_vertex=h,
                )
                for h, l, req in recs
                if req
            ),
            key=lambda c: (c.u, c.v),
        )
        problems = _verify_contacts(shapes, set(g.edges), contacts)
        if not problems:
            xs_all = [x for s in shapes for x in (s.hat_left[0], s.hat_right[0], s.center[0])]
            ys_all = [y for s in shapes for y in (s.center[1], s.leg_bottom[1])]
            grid = (max(xs_all) - min(xs_all) + 1, max(ys_all) - min(ys_all) + 1)
            return TShapeRep(tuple(shapes), tuple(contacts), grid, et.graph.max_degree)
    raise RetractionFailed(f"contact verification kept failing: {problems[:3]}")


def _verify_contacts(shapes, edges, contacts) -> list[str]:
    """Exact check: touch points exist iff edges do, once, where recorded."""
    n = len(shapes)
    cx = np.array([s.center[0] for s in shapes])
    cy = np.array([s.center[1] for s in shapes])
    hx1 = np.array([s.hat_left[0] for s in shapes])
    hx2 = np.array([s.hat_right[0] for s in shapes])
    ly = np.array([s.leg_bottom[1] for s in shapes])

    # hat of i vs leg of j (coordinates are small ints: comparisons exact)
    cover_x = (hx1[:, None] <= cx[None, :]) & (cx[None, :] <= hx2[:, None])
    cover_y = (ly[None, :] <= cy[:, None]) & (cy[:, None] <= cy[None, :])
    hit = cover_x & cover_y
    np.fill_diagonal(hit, False)
    strict_x = (hx1[:, None] < cx[None, :]) & (cx[None, :] < hx2[:, None])
    strict_y = (ly[None, :] < cy[:, None]) & (cy[:, None] < cy[None, :])
    crossing = strict_x & strict_y
    np.fill_diagonal(crossing, False)

    problems = []
    for i, j in zip(*np.nonzero(crossing)):
        problems.append(f"hat of {i} crosses leg of {j}")
    # same-row hats / same-column legs must stay strictly apart
    for i in range(n):
        for j in range(i + 1, n):
            if cy[i] == cy[j] and max(hx1[i], hx1[j]) <= min(hx2[i], hx2[j]):
                problems.append(f"hats of {i},{j} overlap")
            if cx[i] == cx[j] and max(ly[i], ly[j]) <= min(cy[i], cy[j]):
                problems.append(f"legs of {i},{j} intersect")
    if problems:
        return problems

    recorded = {(c.u, c.v): c for c in contacts}
    for i in range(n):
        for j in range(i + 1, n):
            pts = set()
            if hit[i, j]:
                pts.add((int(cx[j]), int(cy[i])))
            if hit[j, i]:
                pts.add((int(cx[i]), int(cy[j])))
            key = (i, j)
            if key in edges:
                if len(pts) != 1:
                    problems.append(f"edge {key}: {len(pts)} touch points")
                elif key not in recorded or recorded[key].point != next(iter(pts)):
                    problems.append(f"edge {key}: touch point mismatch")
            elif pts:
                problems.append(f"non-edge {key} touches at {sorted(pts)}")
    if not problems and len(recorded) != len(edges):
        problems.append("contact count differs from edge count")
    return problems


# --- numbering and drawing -------------------------------------------------


def _traversal_key(rep: TShapeRep, v: int, c: Contact):
    """Sort key along the ccw walk: upper-left hat, left tip, leg left side,
    bottom tip, leg right side, right tip, upper-right hat."""
    t = rep.shapes[v]
    p = c.point
    cx, cy = t.center
    if p[1] == cy:
        if p == t.hat_left:
            return (2, 0)
        if p == t.hat_right:
            return (6, 0)
        return (1, -p[0]) if p[0] < cx else (7, -p[0])
    assert p[0] == cx and p[1] < cy, "contact off the T"
    if p == t.leg_bottom:
        return (4, 0)
    other = rep.shapes[c.hat_vertex]
    if other.hat_right[0] == cx:
        return (3, -p[1])  # foreign hat arrives from the left
    assert other.hat_left[0] == cx, "hat tip not at the leg column"
    return (5, p[1])


def contact_numbering(rep: TShapeRep) -> ContactNumbering:
    orders = []
    for v in range(rep.n):
        incident = rep.contacts_at(v)
        incident.sort(key=lambda ci: _traversal_key(rep, v, rep.contacts[ci]))
        orders.append(tuple(incident))
    return ContactNumbering(tuple(orders))


def draw_onebend(g: PlanarGraph) -> Drawing:
    """One-bend drawing with at most 2*d_T slopes, exact rational bends."""
    if g.n < 2:
        raise ValueError(f"need n >= 2, got {g.n}")
    e = planar_embed(g)
    rep = tshape_representation(e)
    num = contact_numbering(rep)
    big_n = max(rep.n, rep.grid[0], rep.grid[1])
    points = {v: rep.shapes[v].center for v in range(g.n)}
    quarter = Fraction(1, 4)
    arcs = []
    for ci, c in enumerate(rep.contacts):
        h, l = c.hat_vertex, c.leg_vertex
        i = num.index_at(h, ci)
        j = num.index_at(l, ci)
        a = slope_alpha(i, big_n)
        b = slope_beta(j, big_n)
        hx, hy = points[h]
        lx, ly = points[l]
        x = (Fraction(ly - hy) + a * hx - b * lx) / (a - b)
        y = hy + a * (x - hx)
        px, py = c.point
        assert (x - px) ** 2 < quarter and (y - py) ** 2 < quarter, "bend strayed"
        arcs.append(EdgeArc(c.u, c.v, (points[c.u], (x, y), points[c.v])))
    return Drawing(
        method="onebend",
        points=points,
        edges=tuple(arcs),
        coord_kind="rational",
        meta={"d": g.max_degree, "d_T": rep.d_t, "grid": rep.grid, "N": big_n},
    )
