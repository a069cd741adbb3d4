"""Shared instance builders and the test-only crossing recount."""

from __future__ import annotations

import pytest

from nodetrix.model import FlatClusteredGraph, InterEdge, LayoutConfig, Square


def two_cluster_instance(
    square_b: Square = Square(8, -8, 4),
    edges=(("a1", "b1"), ("a2", "b2")),
    order_a=("a1", "a2", "a3", "a4"),
    order_b=("b1", "b2", "b3", "b4"),
) -> tuple[FlatClusteredGraph, LayoutConfig]:
    g = FlatClusteredGraph(
        clusters={"A": list(order_a), "B": list(order_b)},
        inter_edges=[InterEdge(f"e{i}", u, v) for i, (u, v) in enumerate(edges)],
    )
    cfg = LayoutConfig(
        squares={"A": Square(0, 0, 4), "B": square_b},
        orders={"A": list(order_a), "B": list(order_b)},
    )
    return g, cfg


@pytest.fixture
def simple_pair():
    return two_cluster_instance()


def naive_recount(g: FlatClusteredGraph, cfg: LayoutConfig):
    """Independent O(E^2) local-crossing recount on unscaled rationals.

    A deliberate re-implementation (own orientation code, no rescaling)
    used as the ground truth for Drawing.chi.
    """
    from nodetrix.geometry import edge_segments

    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (v > 0) - (v < 0)

    def crosses(s1, s2):
        (a, b), (c, d) = s1, s2
        o1, o2 = orient(c, d, a), orient(c, d, b)
        o3, o4 = orient(a, b, c), orient(a, b, d)
        if o1 * o2 < 0 and o3 * o4 < 0:
            return True
        if o1 == o2 == o3 == o4 == 0:
            lo1, hi1 = sorted([a, b])
            lo2, hi2 = sorted([c, d])
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            return lo < hi
        for p, o, (q1, q2) in (
            (a, o1, (c, d)),
            (b, o2, (c, d)),
            (c, o3, (a, b)),
            (d, o4, (a, b)),
        ):
            if o == 0:
                if min(q1[0], q2[0]) <= p[0] <= max(q1[0], q2[0]) and min(
                    q1[1], q2[1]
                ) <= p[1] <= max(q1[1], q2[1]):
                    if p != q1 and p != q2:
                        return True
        return False

    segs = edge_segments(g, cfg)
    chi = {cid: 0 for cid in g.clusters}
    eids = sorted(segs)
    for i, e1 in enumerate(eids):
        for e2 in eids[i + 1 :]:
            s1 = (tuple(segs[e1].a), tuple(segs[e1].b))
            s2 = (tuple(segs[e2].a), tuple(segs[e2].b))
            shared = set(g.edge_clusters(g.edges_by_id[e1])) & set(
                g.edge_clusters(g.edges_by_id[e2])
            )
            if shared and crosses(s1, s2):
                for cid in shared:
                    chi[cid] += 1
    return sum(chi.values()), chi
