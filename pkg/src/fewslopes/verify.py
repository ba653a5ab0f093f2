"""Independent certification of drawings.

Every check here recomputes its answer from the polylines alone; nothing is
shared with the drawing pipelines beyond the primitive types. Two numeric
regimes: drawings tagged "int"/"rational" are tested exactly, "float"
drawings with an angular/positional tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .drawing import Drawing, SlopeSet, Wedge
from .errors import AmbiguousBucket, SlopeOffGrid

__all__ = [
    "CrossingWitness",
    "VerifyReport",
    "check_noncrossing",
    "slope_census",
    "max_bends",
    "check_contiguous",
    "check_rotation",
    "check_wedge",
    "check_gd_claims",
    "hausdorff_within",
    "verify_drawing",
]


@dataclass(frozen=True)
class CrossingWitness:
    edge_a: tuple[int, int]
    seg_a: int
    edge_b: tuple[int, int]
    seg_b: int
    where: tuple[float, float]


@dataclass(frozen=True)
class VerifyReport:
    crossing_free: bool
    crossing_witness: CrossingWitness | None
    slope_census: tuple[tuple[float, int], ...]
    distinct_slopes: int
    max_bends: int
    contiguity_ok: dict[int, bool] | None
    wedge_ok: bool | None
    exact: bool
    tolerance: float

    def __post_init__(self):
        if self.crossing_free == (self.crossing_witness is not None):
            raise ValueError("witness must be present exactly when crossing")

    @property
    def ok(self) -> bool:
        cont = self.contiguity_ok is None or all(self.contiguity_ok.values())
        return self.crossing_free and cont and self.wedge_ok is not False


def _segments(dr: Drawing):
    """Flat list of (edge index, segment index, p, q)."""
    out = []
    for ei, a in enumerate(dr.edges):
        for si in range(len(a.poly) - 1):
            out.append((ei, si, a.poly[si], a.poly[si + 1]))
    return out


# --- crossing test ----------------------------------------------------------------


def _orient(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _exact_pair(p1, p2, p3, p4):
    """Intersection of closed segments with exact arithmetic.

    Returns None (disjoint), or (kind, x, y) with kind "point"/"overlap" and
    an exact representative common point.
    """
    d1 = _orient(p3, p4, p1)
    d2 = _orient(p3, p4, p2)
    d3 = _orient(p1, p2, p3)
    d4 = _orient(p1, p2, p4)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 and \
       ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        t = Fraction(d1) / Fraction(d1 - d2)  # p1 + t*(p2-p1) hits the other line
        x = p1[0] + t * (p2[0] - p1[0])
        y = p1[1] + t * (p2[1] - p1[1])
        return ("point", x, y)
    if d1 == 0 and d2 == 0:
        # collinear: compare 1D spans along the dominant axis
        axis = 0 if abs(p2[0] - p1[0]) >= abs(p2[1] - p1[1]) else 1
        a1, a2 = sorted((p1[axis], p2[axis]))
        b1, b2 = sorted((p3[axis], p4[axis]))
        lo, hi = max(a1, b1), min(a2, b2)
        if lo > hi:
            return None
        pt = next(p for p in (p1, p2, p3, p4) if p[axis] == lo and _between(p1, p2, p) and _between(p3, p4, p))
        return ("point" if lo == hi else "overlap", pt[0], pt[1])
    for p, (q1, q2), d in ((p1, (p3, p4), d1), (p2, (p3, p4), d2),
                           (p3, (p1, p2), d3), (p4, (p1, p2), d4)):
        if d == 0 and _between(q1, q2, p):
            return ("point", p[0], p[1])
    return None


def _between(a, b, p) -> bool:
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _dist_pt_seg(p, a, b) -> float:
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    px, py = float(p[0]), float(p[1])
    vx, vy = bx - ax, by - ay
    L2 = vx * vx + vy * vy
    if L2 == 0.0:
        return math.hypot(px - ax, py - ay)
    t = max(0.0, min(1.0, ((px - ax) * vx + (py - ay) * vy) / L2))
    return math.hypot(px - ax - t * vx, py - ay - t * vy)


def _seg_dist(p1, p2, p3, p4) -> float:
    if _float_proper_cross(p1, p2, p3, p4):
        return 0.0
    return min(
        _dist_pt_seg(p1, p3, p4),
        _dist_pt_seg(p2, p3, p4),
        _dist_pt_seg(p3, p1, p2),
        _dist_pt_seg(p4, p1, p2),
    )


def _float_proper_cross(p1, p2, p3, p4) -> bool:
    d1 = _orient(p3, p4, p1)
    d2 = _orient(p3, p4, p2)
    d3 = _orient(p1, p2, p3)
    d4 = _orient(p1, p2, p4)
    return ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    )


def _float_pair(p1, p2, p3, p4, allowed, eps):
    """Tolerance version of _exact_pair against a set of allowed touch points.

    Returns None if the segments keep clear (or touch only at an allowed
    point), else a violation witness point.
    """
    # collinear-overlap guard first: parallel, close, long common span
    ux, uy = p2[0] - p1[0], p2[1] - p1[1]
    vx, vy = p4[0] - p3[0], p4[1] - p3[1]
    lu = math.hypot(ux, uy)
    lv = math.hypot(vx, vy)
    if lu > 0 and lv > 0 and abs(ux * vy - uy * vx) <= eps * lu * lv:
        h = max(_dist_pt_seg(p3, p1, p2), _dist_pt_seg(p4, p1, p2))
        if h <= eps:
            ts = sorted(((p[0] - p1[0]) * ux + (p[1] - p1[1]) * uy) / (lu * lu)
                        for p in (p3, p4))
            lo, hi = max(0.0, ts[0]), min(1.0, ts[1])
            if (hi - lo) * lu > eps:
                mid = (lo + hi) / 2
                return (p1[0] + mid * ux, p1[1] + mid * uy)
    if _float_proper_cross(p1, p2, p3, p4):
        d1 = _orient(p3, p4, p1)
        d2 = _orient(p3, p4, p2)
        t = d1 / (d1 - d2)
        return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))
    d = _seg_dist(p1, p2, p3, p4)
    if d > eps:
        return None
    for a in allowed:
        if _dist_pt_seg(a, p1, p2) <= eps and _dist_pt_seg(a, p3, p4) <= eps:
            return None
    # nearest approach as witness
    best = min(
        ((p, _dist_pt_seg(p, p3, p4)) for p in (p1, p2)),
        key=lambda t: t[1],
    )
    best2 = min(
        ((p, _dist_pt_seg(p, p1, p2)) for p in (p3, p4)),
        key=lambda t: t[1],
    )
    p = best[0] if best[1] <= best2[1] else best2[0]
    return (float(p[0]), float(p[1]))


def _candidate_pairs(segs, eps):
    """Index pairs whose eps-expanded bounding boxes overlap (numpy)."""
    m = len(segs)
    if m < 2:
        return []
    arr = np.array(
        [[float(p[0]), float(p[1]), float(q[0]), float(q[1])] for _, _, p, q in segs]
    )
    lox = np.minimum(arr[:, 0], arr[:, 2]) - eps
    hix = np.maximum(arr[:, 0], arr[:, 2]) + eps
    loy = np.minimum(arr[:, 1], arr[:, 3]) - eps
    hiy = np.maximum(arr[:, 1], arr[:, 3]) + eps
    out = []
    chunk = max(1, int(4e6 // max(m, 1)))
    for i0 in range(0, m, chunk):
        i1 = min(m, i0 + chunk)
        ox = (lox[i0:i1, None] <= hix[None, :]) & (hix[i0:i1, None] >= lox[None, :])
        oy = (loy[i0:i1, None] <= hiy[None, :]) & (hiy[i0:i1, None] >= loy[None, :])
        ii, jj = np.nonzero(ox & oy)
        keep = ii + i0 < jj
        out.extend(zip((ii + i0)[keep].tolist(), jj[keep].tolist()))
    return out


def check_noncrossing(dr: Drawing, tol: float = 1e-9):
    """(crossing_free, witness). Arcs of different edges may meet only at a
    shared endpoint; collinear overlap is a violation."""
    segs = _segments(dr)
    exact = dr.coord_kind in ("int", "rational")
    scale = 1.0
    if segs:
        scale = 1.0 + max(
            abs(float(c)) for _, _, p, q in segs for c in (*p, *q)
        )
    eps_box = tol * scale
    for i, j in _candidate_pairs(segs, eps_box):
        ei, si, p1, p2 = segs[i]
        ej, sj, p3, p4 = segs[j]
        if ei == ej:
            continue
        ea, eb = dr.edges[ei], dr.edges[ej]
        shared = {ea.u, ea.v} & {eb.u, eb.v}
        allowed = [dr.points[v] for v in shared]
        if exact:
            hit = _exact_pair(p1, p2, p3, p4)
            if hit is None:
                continue
            kind, wx, wy = hit
            if kind == "point" and any(a[0] == wx and a[1] == wy for a in allowed):
                continue
            witness = CrossingWitness(
                (ea.u, ea.v), si, (eb.u, eb.v), sj, (float(wx), float(wy))
            )
            return False, witness
        else:
            eps = tol * (1.0 + max(abs(float(c)) for p in (p1, p2, p3, p4) for c in p))
            w = _float_pair(
                tuple(map(float, p1)), tuple(map(float, p2)),
                tuple(map(float, p3)), tuple(map(float, p4)),
                [tuple(map(float, a)) for a in allowed], eps,
            )
            if w is not None:
                witness = CrossingWitness((ea.u, ea.v), si, (eb.u, eb.v), sj, w)
                return False, witness
    return True, None


# --- slopes -----------------------------------------------------------------------


def _exact_dir_key(dx, dy):
    """Canonical primitive integer direction mod pi."""
    fx, fy = Fraction(dx), Fraction(dy)
    den = fx.denominator * fy.denominator
    ix = int(fx * den)
    iy = int(fy * den)
    g = math.gcd(abs(ix), abs(iy))
    ix //= g
    iy //= g
    if ix < 0 or (ix == 0 and iy < 0):
        ix, iy = -ix, -iy
    return (ix, iy)


def slope_census(dr: Drawing, tol: float = 1e-9):
    """Bucket segment directions mod pi.

    Returns (census, distinct) where census is a tuple of (angle, count)
    with angles measured clockwise from the upward vertical in [0, pi).
    Raises AmbiguousBucket when float clusters are separated by more than
    tol but less than 2*tol.
    """
    segs = _segments(dr)
    if not segs:
        return (), 0
    if dr.coord_kind in ("int", "rational"):
        buckets: dict[tuple[int, int], int] = {}
        for _, _, p, q in segs:
            key = _exact_dir_key(q[0] - p[0], q[1] - p[1])
            buckets[key] = buckets.get(key, 0) + 1
        census = sorted(
            (math.atan2(kx, ky) % math.pi, cnt) for (kx, ky), cnt in buckets.items()
        )
        return tuple(census), len(census)

    thetas = sorted(
        math.atan2(float(q[0]) - float(p[0]), float(q[1]) - float(p[1])) % math.pi
        for _, _, p, q in segs
    )
    m = len(thetas)
    gaps = [
        (thetas[(i + 1) % m] - thetas[i]) % math.pi if m > 1 else 0.0
        for i in range(m)
    ]
    if m == 1 or max(gaps) <= tol:
        return ((thetas[0], m),), 1
    cut = max(range(m), key=lambda i: gaps[i])
    ordered = thetas[cut + 1 :] + thetas[: cut + 1]
    clusters = [[ordered[0]]]
    for a, b in zip(ordered, ordered[1:]):
        if (b - a) % math.pi <= tol:
            clusters[-1].append(b)
        else:
            clusters.append([b])
    reps = []
    for cl in clusters:
        span = (cl[-1] - cl[0]) % math.pi
        reps.append((cl[0] + span / 2) % math.pi)
    for i in range(len(clusters)):
        j = (i + 1) % len(clusters)
        gap = (clusters[j][0] - clusters[i][-1]) % math.pi
        if gap < 2 * tol:
            raise AmbiguousBucket(
                f"slope clusters at {reps[i]:.12f} and {reps[j]:.12f} separated "
                f"by {gap:.3e} < 2*tol"
            )
    census = sorted(zip(reps, (len(cl) for cl in clusters)))
    return tuple(census), len(census)


def max_bends(dr: Drawing, tol: float = 1e-9) -> int:
    """Largest bend count over edges, merging consecutive collinear pieces."""
    exact = dr.coord_kind in ("int", "rational")
    worst = 0
    for a in dr.edges:
        dirs = []
        for i in range(len(a.poly) - 1):
            dx = a.poly[i + 1][0] - a.poly[i][0]
            dy = a.poly[i + 1][1] - a.poly[i][1]
            if exact:
                dirs.append(_exact_dir_key(dx, dy))
            else:
                dirs.append(math.atan2(float(dx), float(dy)) % math.pi)
        merged = 1
        for d0, d1 in zip(dirs, dirs[1:]):
            if exact:
                if d0 != d1:
                    merged += 1
            elif min((d1 - d0) % math.pi, (d0 - d1) % math.pi) > tol:
                merged += 1
        worst = max(worst, merged - 1)
    return worst


# --- per-vertex structure ---------------------------------------------------------


def _departures(dr: Drawing):
    """(vertex, other, dx, dy) for the first segment of each arc end."""
    out = []
    for a in dr.edges:
        p0, p1 = a.poly[0], a.poly[1]
        out.append((a.u, a.v, float(p1[0]) - float(p0[0]), float(p1[1]) - float(p0[1])))
        q0, q1 = a.poly[-1], a.poly[-2]
        out.append((a.v, a.u, float(q1[0]) - float(q0[0]), float(q1[1]) - float(q0[1])))
    return out


def check_contiguous(dr: Drawing, slopes: SlopeSet, tol: float = 1e-6):
    """Per-vertex: do the directed slots used by departing segments form one
    circular run? Raises SlopeOffGrid for a direction matching no slot."""
    slots: dict[int, set[int]] = {v: set() for v in dr.points}
    for v, other, dx, dy in _departures(dr):
        k = slopes.directed_index(dx, dy, tol)
        if k is None:
            ang = math.atan2(dx, dy) % (2 * math.pi)
            raise SlopeOffGrid(
                f"segment leaving {v} toward {other} at angle {ang:.12f} "
                f"matches no multiple of pi/{slopes.s}"
            )
        slots[v].add(k)
    return {v: slopes.is_contiguous(ks) for v, ks in slots.items()}


def check_rotation(dr: Drawing, rotation) -> list[int]:
    """Vertices whose drawn neighbor order (clockwise) disagrees with the
    given rotation system. Uses first-segment departure angles."""
    by_vertex: dict[int, list[tuple[float, int]]] = {v: [] for v in dr.points}
    for v, other, dx, dy in _departures(dr):
        by_vertex[v].append((math.atan2(dx, dy) % (2 * math.pi), other))
    bad = []
    for v, want in enumerate(rotation):
        got = [o for _, o in sorted(by_vertex.get(v, []))]
        if len(got) != len(want) or len(got) < 2:
            if tuple(got) != tuple(want):
                bad.append(v)
            continue
        w = list(want)
        if not any(w[i:] + w[:i] == got for i in range(len(w))):
            bad.append(v)
    return bad


def check_wedge(dr: Drawing, tol: float = 1e-9) -> bool | None:
    """Recompute wedge containment from drawing meta; None if no wedge."""
    w = dr.meta.get("wedge")
    if w is None:
        return None
    wedge = Wedge(tuple(w["apex"]), w["start"], w["span"])
    apex = (float(w["apex"][0]), float(w["apex"][1]))
    for a in dr.edges:
        for p in a.poly:
            fp = (float(p[0]), float(p[1]))
            if fp != apex and not wedge.contains(fp, tol):
                return False
    return True


# --- lower-bound family consistency ------------------------------------------------


@dataclass(frozen=True)
class GdReport:
    d: int
    distinct: int
    required: int
    lower_bound_ok: bool
    hub_multiplicity: dict[float, int] | None
    hub_multiplicity_ok: bool | None


def check_gd_claims(dr: Drawing, d: int, tol: float = 1e-9) -> GdReport:
    """Consistency checks for drawings of the degree-d lower-bound family.

    Straight-line drawings need at least 3d-6 distinct slopes; one-bend
    drawings at least ceil(3(d-1)/4). For one-bend drawings the segments
    incident to the three degree-d hubs a, b, c (vertices 0, 1, 2) must not
    repeat any slope more than 4 times.
    """
    _, distinct = slope_census(dr, tol)
    bends = max_bends(dr, tol)
    required = 3 * d - 6 if bends == 0 else -(-3 * (d - 1) // 4)
    ok = distinct >= required

    hub_mult = None
    hub_ok = None
    if bends == 1:
        exact = dr.coord_kind in ("int", "rational")
        buckets: dict = {}
        for a in dr.edges:
            for hub, p, q in ((a.u, a.poly[0], a.poly[1]), (a.v, a.poly[-1], a.poly[-2])):
                if hub not in (0, 1, 2):
                    continue
                dx, dy = q[0] - p[0], q[1] - p[1]
                key = (
                    _exact_dir_key(dx, dy)
                    if exact
                    else round((math.atan2(float(dx), float(dy)) % math.pi) / tol)
                )
                buckets[key] = buckets.get(key, 0) + 1
        hub_mult = {
            (math.atan2(k[0], k[1]) % math.pi if isinstance(k, tuple) else k * tol): c
            for k, c in buckets.items()
        }
        hub_ok = all(c <= 4 for c in buckets.values())
    return GdReport(d, distinct, required, ok, hub_mult, hub_ok)


# --- polyline proximity ------------------------------------------------------------


def _dist_to_polyline(p, poly) -> float:
    return min(_dist_pt_seg(p, poly[i], poly[i + 1]) for i in range(len(poly) - 1))


def hausdorff_within(pa, pb, bound: float) -> bool:
    """Certified test: is the Hausdorff distance between polylines < bound?

    Branch-and-bound on each source segment.  Point-to-segment distance is
    convex along a straight subsegment, so against any single target segment
    the subsegment's worst point is one of its endpoints; taking the best
    target segment gives an upper bound with no dependence on subsegment
    length, and flat regions prune without subdividing.  Returns False as
    soon as a point at distance >= bound is found.
    """
    for src, dst in ((pa, pb), (pb, pa)):
        dseg = [(dst[j], dst[j + 1]) for j in range(len(dst) - 1)]
        for i in range(len(src) - 1):
            stack = [(src[i], src[i + 1])]
            while stack:
                a, b = stack.pop()
                wa = math.inf
                wb = math.inf
                ub = math.inf
                for p, q in dseg:
                    da = _dist_pt_seg(a, p, q)
                    db = _dist_pt_seg(b, p, q)
                    wa = min(wa, da)
                    wb = min(wb, db)
                    ub = min(ub, max(da, db))
                if wa >= bound or wb >= bound:
                    return False
                if ub < bound:
                    continue
                mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
                if math.hypot(b[0] - a[0], b[1] - a[1]) < 2e-12:
                    if _dist_to_polyline(mid, dst) >= bound:
                        return False
                    continue
                stack.append((a, mid))
                stack.append((mid, b))
    return True


# --- aggregate --------------------------------------------------------------------


def verify_drawing(
    dr: Drawing, slopes: SlopeSet | None = None, tol: float = 1e-9
) -> VerifyReport:
    crossing_free, witness = check_noncrossing(dr, tol)
    census, distinct = slope_census(dr, tol)
    bends = max_bends(dr, tol)
    if slopes is None and dr.method == "twobend" and "s" in dr.meta:
        slopes = SlopeSet(dr.meta["s"])
    contiguity = None
    if slopes is not None:
        contiguity = check_contiguous(dr, slopes, max(tol, 1e-9))
    wedge_ok = check_wedge(dr, tol)
    return VerifyReport(
        crossing_free=crossing_free,
        crossing_witness=witness,
        slope_census=census,
        distinct_slopes=distinct,
        max_bends=bends,
        contiguity_ok=contiguity,
        wedge_ok=wedge_ok,
        exact=dr.coord_kind in ("int", "rational"),
        tolerance=tol,
    )
