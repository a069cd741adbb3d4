"""Exact geometric primitives: anchors, pipes, crossings, square avoidance.

Every predicate here is decided with exact rational (or integer) arithmetic;
there is no epsilon anywhere. The functions are generic over the coordinate
type: they accept Fractions and plain ints alike, which lets the solvers run
on an integer-rescaled copy of the scene for speed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple

from .model import FlatClusteredGraph, LayoutConfig, Side, Square


class Point(NamedTuple):
    x: Fraction
    y: Fraction


class Segment(NamedTuple):
    a: Point
    b: Point


class Pipe(NamedTuple):
    """Convex hull of two squares, as its hull vertices in CCW order."""

    vertices: tuple[Point, ...]


# ---------------------------------------------------------------------------
# Low-level predicates
# ---------------------------------------------------------------------------


def orientation(p, q, r) -> int:
    """Sign of the cross product (q - p) x (r - p): +1 left turn, -1 right."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def _within_bbox(p, q, r) -> bool:
    # for r collinear with p-q: is r on the closed segment?
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(
        p[1], q[1]
    )


def segments_cross(s1: Segment, s2: Segment) -> bool:
    """True iff the segments share a point that is not an endpoint of both.

    Touching at an interior point and collinear overlap both count as
    crossings; meeting only at a point that is an endpoint of each segment
    does not (edges may share an attachment point).
    """
    a, b = s1
    c, d = s2
    o1 = orientation(c, d, a)
    o2 = orientation(c, d, b)
    o3 = orientation(a, b, c)
    o4 = orientation(a, b, d)

    if o1 * o2 < 0 and o3 * o4 < 0:
        return True

    if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
        # collinear: compare the 1-D overlap of the two segments
        lo1, hi1 = sorted((tuple(a), tuple(b)))
        lo2, hi2 = sorted((tuple(c), tuple(d)))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return False
        # a single shared point is an endpoint of both segments here
        return lo != hi

    hits = (
        (a, o1, (c, d)),
        (b, o2, (c, d)),
        (c, o3, (a, b)),
        (d, o4, (a, b)),
    )
    for p, o, (q1, q2) in hits:
        if o == 0 and _within_bbox(q1, q2, p):
            if not (tuple(p) == tuple(q1) or tuple(p) == tuple(q2)):
                return True
            # p coincides with an endpoint of the other segment: forgiven
    return False


def segment_intersection_point(s1: Segment, s2: Segment) -> Point | None:
    """Exact intersection point of two properly crossing segments, else None."""
    (x1, y1), (x2, y2) = s1
    (x3, y3), (x4, y4) = s2
    dx1, dy1 = x2 - x1, y2 - y1
    dx2, dy2 = x4 - x3, y4 - y3
    denom = dx1 * dy2 - dy1 * dx2
    if denom == 0:
        return None
    t = Fraction((x3 - x1) * dy2 - (y3 - y1) * dx2, denom)
    if not 0 <= t <= 1:
        return None
    return Point(x1 + t * dx1, y1 + t * dy1)


def segment_avoids_square(s: Segment, q: Square) -> bool:
    """True iff s meets the closed square only at endpoints of s on its boundary.

    Liang-Barsky style clipping with exact parameters: the segment is clipped
    against the four half-planes; a nonempty clip interval of positive length
    (penetration, a chord, or sliding along a side) fails, and a single-point
    clip passes only when the point is an endpoint of s.
    """
    (x1, y1), (x2, y2) = s
    dx, dy = x2 - x1, y2 - y1
    t0, t1 = Fraction(0), Fraction(1)
    for p, r in ((-dx, x1 - q.min_x), (dx, q.max_x - x1), (-dy, y1 - q.min_y), (dy, q.max_y - y1)):
        if p == 0:
            if r < 0:
                return True  # parallel and fully outside this half-plane
            continue
        t = Fraction(r, p)
        if p < 0:
            if t > t0:
                t0 = t
        else:
            if t < t1:
                t1 = t
        if t0 > t1:
            return True
    if t0 == t1:
        return t0 == 0 or t0 == 1
    return False


# ---------------------------------------------------------------------------
# Anchors
# ---------------------------------------------------------------------------


def anchor_point(q: Square, order_index: int, cluster_size: int, side: Side) -> Point:
    """Attachment point of a vertex's row/column strip on one square side.

    Column j spans x in [min_x + (j-1)*size/n, min_x + j*size/n] left to
    right; row j spans the mirrored band from the top. T/B return column
    midpoints, L/R row midpoints; the point always lies on the boundary.
    """
    j, n = order_index, cluster_size
    if not 1 <= j <= n:
        raise ValueError(f"order index {j} out of range 1..{n}")
    along = Fraction(2 * j - 1, 2 * n) * q.size
    if side == "T":
        return Point(q.min_x + along, q.max_y)
    if side == "B":
        return Point(q.min_x + along, q.min_y)
    if side == "L":
        return Point(q.min_x, q.max_y - along)
    if side == "R":
        return Point(q.max_x, q.max_y - along)
    raise ValueError(f"unknown side {side!r}")


def edge_anchor(
    g: FlatClusteredGraph, cfg: LayoutConfig, vertex: str, side: Side
) -> Point:
    cid = g.cluster_of[vertex]
    return anchor_point(
        cfg.squares[cid], cfg.order_index(cid, vertex), len(g.clusters[cid]), side
    )


def edge_segments(g: FlatClusteredGraph, cfg: LayoutConfig) -> dict[str, Segment]:
    """Straight anchor-to-anchor segment per edge; requires full sides."""
    if cfg.sides is None:
        raise ValueError("edge_segments needs a full side assignment")
    out: dict[str, Segment] = {}
    for e in g.inter_edges:
        su, sv = cfg.sides[e.id]
        out[e.id] = Segment(edge_anchor(g, cfg, e.u, su), edge_anchor(g, cfg, e.v, sv))
    return out


# ---------------------------------------------------------------------------
# Pipes
# ---------------------------------------------------------------------------


def convex_hull(points: Iterable[tuple]) -> list[Point]:
    """Andrew monotone chain; strictly convex output in CCW order."""
    pts = sorted(set((p[0], p[1]) for p in points))
    if len(pts) == 1:
        return [Point(*pts[0])]
    lower: list[tuple] = []
    for p in pts:
        while len(lower) >= 2 and orientation(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orientation(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return [Point(*p) for p in lower[:-1] + upper[:-1]]


def pipe_of(qa: Square, qb: Square) -> Pipe:
    """Convex hull of the two squares' corners (4 to 8 vertices)."""
    return Pipe(tuple(convex_hull(qa.corners() + qb.corners())))


def _polygons_intersect(poly_a: list, poly_b: list) -> bool:
    """Closed convex polygons (CCW) intersect; boundary contact counts."""
    for first, second in ((poly_a, poly_b), (poly_b, poly_a)):
        n = len(first)
        for i in range(n):
            p, q = first[i], first[(i + 1) % n]
            if all(orientation(p, q, r) < 0 for r in second):
                return False  # strictly separating edge found
    return True


def pipe_intersects_square(pipe: Pipe, q: Square) -> bool:
    return _polygons_intersect(list(pipe.vertices), q.corners())


def validate_pipes(
    cfg: LayoutConfig, pairs: Iterable[tuple[str, str]]
) -> list[str]:
    """For each adjacent pair, report third squares touching the pair's pipe."""
    issues: list[str] = []
    for ca, cb in pairs:
        pipe = pipe_of(cfg.squares[ca], cfg.squares[cb])
        for ck in sorted(cfg.squares):
            if ck in (ca, cb):
                continue
            if pipe_intersects_square(pipe, cfg.squares[ck]):
                issues.append(f"pipe of ({ca!r}, {cb!r}) intersects square of {ck!r}")
    return issues


# ---------------------------------------------------------------------------
# Integer rescaling (internal speed path)
# ---------------------------------------------------------------------------


def integer_scale(g: FlatClusteredGraph, cfg: LayoutConfig) -> int:
    """Smallest uniform scale that makes every square bound and anchor integral."""
    scale = 1
    for cid, sq in cfg.squares.items():
        n = max(1, len(g.clusters.get(cid, ())))
        scale = math.lcm(
            scale,
            sq.min_x.denominator,
            sq.min_y.denominator,
            sq.size.denominator * 2 * n,
        )
    return scale


def scaled_square(sq: Square, scale: int) -> Square:
    return Square(sq.min_x * scale, sq.min_y * scale, sq.size * scale)


def scaled_anchor(
    sq_scaled: Square, order_index: int, cluster_size: int, side: Side
) -> tuple[int, int]:
    p = anchor_point(sq_scaled, order_index, cluster_size, side)
    return (int(p.x), int(p.y))


# ---------------------------------------------------------------------------
# Crossing counts
# ---------------------------------------------------------------------------


def count_local_crossings(
    g: FlatClusteredGraph, cfg: LayoutConfig
) -> tuple[int, dict[str, int], list[str]]:
    """Count crossings between inter-cluster edges sharing a cluster.

    Draws every edge as the straight segment between its two anchors. A
    crossing pair is charged once per cluster both edges are incident to;
    edges whose segment meets an incident square beyond its own endpoints
    are reported as matrix violations. Runs on an integer-rescaled copy of
    the scene; the result is exact.
    """
    if cfg.sides is None:
        raise ValueError("count_local_crossings needs a full side assignment")
    scale = integer_scale(g, cfg)
    squares = {cid: scaled_square(sq, scale) for cid, sq in cfg.squares.items()}

    segs: list[tuple[str, str, str, Segment]] = []  # (eid, cluster_u, cluster_v, seg)
    violations: list[str] = []
    for e in sorted(g.inter_edges, key=lambda e: e.id):
        cu, cv = g.edge_clusters(e)
        su, sv = cfg.sides[e.id]
        pu = scaled_anchor(squares[cu], cfg.order_index(cu, e.u), len(g.clusters[cu]), su)
        pv = scaled_anchor(squares[cv], cfg.order_index(cv, e.v), len(g.clusters[cv]), sv)
        seg = Segment(Point(*pu), Point(*pv))
        segs.append((e.id, cu, cv, seg))
        if not (
            segment_avoids_square(seg, squares[cu])
            and segment_avoids_square(seg, squares[cv])
        ):
            violations.append(e.id)

    chi_per_cluster = {cid: 0 for cid in g.clusters}
    chi = 0
    for i in range(len(segs)):
        _, ca1, cb1, s1 = segs[i]
        for j in range(i + 1, len(segs)):
            _, ca2, cb2, s2 = segs[j]
            shared = {ca1, cb1} & {ca2, cb2}
            if not shared:
                continue
            if segments_cross(s1, s2):
                for cid in shared:
                    chi_per_cluster[cid] += 1
                    chi += 1
    return chi, chi_per_cluster, violations


def crossing_points(
    g: FlatClusteredGraph, cfg: LayoutConfig
) -> list[tuple[str, str, Point]]:
    """Exact crossing locations of counted pairs (for rendering markers)."""
    segs = edge_segments(g, cfg)
    order = sorted(segs)
    out: list[tuple[str, str, Point]] = []
    for i, e1 in enumerate(order):
        for e2 in order[i + 1 :]:
            ea, eb = g.edges_by_id[e1], g.edges_by_id[e2]
            if not (set(g.edge_clusters(ea)) & set(g.edge_clusters(eb))):
                continue
            if segments_cross(segs[e1], segs[e2]):
                p = segment_intersection_point(segs[e1], segs[e2])
                if p is not None:
                    out.append((e1, e2, p))
    return out
