"""Planarity of the collapsed graph under the prescribed rotation system.

With row-column orders and sides fixed but matrix positions free, the
instance is planar-realizable iff the multigraph obtained by collapsing
each cluster to a vertex admits a planar embedding whose clockwise edge
order around each vertex follows the matrix boundary: top side left to
right, right side top to bottom, bottom side right to left, left side
bottom to top. When every (side, strip) slot holds at most one edge that
rotation is fully determined, and planarity reduces to tracing the faces
of the rotation system and checking Euler's formula per connected
component. Slots with two or more edges are out of this module's scope and
raise :class:`UnsupportedRotationError`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import FlatClusteredGraph, LayoutConfig


class UnsupportedRotationError(ValueError):
    """Some (side, strip) slot holds several edges; the rotation is not
    fully determined and the general constrained test is out of scope."""


@dataclass
class CollapsedGraph:
    vertices: list[str]
    edges: dict[str, tuple[str, str]]  # edge id -> (cluster, cluster)


@dataclass
class RotationSystem:
    """Clockwise cyclic edge order at every collapsed vertex."""

    order: dict[str, list[str]]


_SIDE_WALK = ("T", "R", "B", "L")  # clockwise around an axis-aligned square


def collapse(
    g: FlatClusteredGraph, cfg: LayoutConfig
) -> tuple[CollapsedGraph, RotationSystem]:
    """Collapse clusters to vertices, reading rotations off the matrix walls."""
    if cfg.sides is None:
        raise ValueError("collapse needs a full side assignment")
    slots: dict[str, dict[tuple[str, int], list[str]]] = {
        cid: {} for cid in g.clusters
    }
    for e in g.inter_edges:
        for vertex, side in ((e.u, cfg.sides[e.id][0]), (e.v, cfg.sides[e.id][1])):
            cid = g.cluster_of[vertex]
            j = cfg.order_index(cid, vertex)
            slots[cid].setdefault((side, j), []).append(e.id)

    rotations: dict[str, list[str]] = {}
    for cid in sorted(g.clusters):
        cycle: list[str] = []
        n = len(g.clusters[cid])
        for side in _SIDE_WALK:
            strips = range(1, n + 1) if side in ("T", "R") else range(n, 0, -1)
            for j in strips:
                bucket = slots[cid].get((side, j), [])
                if len(bucket) > 1:
                    raise UnsupportedRotationError(
                        f"cluster {cid!r}: {len(bucket)} edges share side {side} "
                        f"at position {j}; rotation not fully determined"
                    )
                cycle.extend(bucket)
        rotations[cid] = cycle

    collapsed = CollapsedGraph(
        vertices=sorted(g.clusters),
        edges={e.id: g.edge_clusters(e) for e in g.inter_edges},
    )
    return collapsed, RotationSystem(rotations)


def trace_faces(graph: CollapsedGraph, rot: RotationSystem) -> list[list[tuple[str, str]]]:
    """Face boundaries as dart lists; a dart is (edge id, tail vertex).

    The successor of a dart arriving at v along e is the next edge after e
    in v's clockwise rotation, leaving v. Every dart lies on exactly one
    face, so face degrees sum to twice the edge count.
    """
    position: dict[tuple[str, str], int] = {}
    for v, cycle in rot.order.items():
        for k, eid in enumerate(cycle):
            position[(v, eid)] = k

    darts = [(eid, tail) for eid, (a, b) in sorted(graph.edges.items()) for tail in (a, b)]
    seen: set[tuple[str, str]] = set()
    faces: list[list[tuple[str, str]]] = []
    for start in darts:
        if start in seen:
            continue
        face: list[tuple[str, str]] = []
        dart = start
        while dart not in seen:
            seen.add(dart)
            face.append(dart)
            eid, tail = dart
            a, b = graph.edges[eid]
            head = b if tail == a else a
            cycle = rot.order[head]
            k = position[(head, eid)]
            nxt = cycle[(k + 1) % len(cycle)]
            dart = (nxt, head)
        faces.append(face)
    return faces


def test_prescribed_rotation(graph: CollapsedGraph, rot: RotationSystem) -> bool:
    """True iff every connected component embeds in the plane with the
    prescribed rotation (V - E + F = 2 per component; edgeless components
    are trivially planar, and components nest freely around each other)."""
    parent = {v: v for v in graph.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in graph.edges.values():
        parent[find(a)] = find(b)

    comp_v: dict[str, int] = {}
    comp_e: dict[str, int] = {}
    for v in graph.vertices:
        comp_v[find(v)] = comp_v.get(find(v), 0) + 1
    for a, _ in graph.edges.values():
        comp_e[find(a)] = comp_e.get(find(a), 0) + 1

    comp_f: dict[str, int] = {}
    for face in trace_faces(graph, rot):
        root = find(face[0][1])
        comp_f[root] = comp_f.get(root, 0) + 1

    for root, nv in comp_v.items():
        ne = comp_e.get(root, 0)
        if ne == 0:
            continue
        if nv - ne + comp_f.get(root, 0) != 2:
            return False
    return True


def planarity_with_fixed_order_and_sides(
    g: FlatClusteredGraph, cfg: LayoutConfig
) -> bool:
    """Convenience wrapper: collapse, then run the rotation test."""
    collapsed, rot = collapse(g, cfg)
    return test_prescribed_rotation(collapsed, rot)
