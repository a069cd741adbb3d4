"""Test instance generators and the brute-force crossing oracle.

The betweenness generator builds the gadget family that ties ordering
constraints to local planarity: a row of large matrices carries one copy
of the item set each, a two-vertex matrix above each gap receives the
triplet edges, and corner/protecting/side-filling edges lock the row
structure. With an item order satisfying every triplet the instance has a
crossing-free drawing; with a violated triplet it has none.

The oracle enumerates complete side assignments directly from first
principles (anchor segments filtered by square avoidance) and never goes
through the solver machinery, so solver results can be checked against it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import feasibility as fz
from .geometry import (
    Point,
    Segment,
    integer_scale,
    pipe_of,
    pipe_intersects_square,
    scaled_anchor,
    scaled_square,
    segment_avoids_square,
    segments_cross,
)
from .model import (
    SIDE_ORDER,
    SIDES,
    FlatClusteredGraph,
    InterEdge,
    LayoutConfig,
    Side,
    Square,
    validate_instance,
)

SidePair = tuple[Side, Side]


# ---------------------------------------------------------------------------
# Betweenness reduction instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BetweennessInstance:
    """Ordering problem: for each triplet (x, y, z), y must come between
    x and z in the chosen total order of the items."""

    items: tuple[str, ...]
    triplets: tuple[tuple[str, str, str], ...]

    def __post_init__(self) -> None:
        if len(self.items) < 3:
            raise ValueError("betweenness needs at least 3 items")
        if len(set(self.items)) != len(self.items):
            raise ValueError("duplicate items")
        for t in self.triplets:
            if len(set(t)) != 3 or any(x not in self.items for x in t):
                raise ValueError(f"bad triplet {t!r}")

    def satisfied_by(self, order: Sequence[str]) -> bool:
        pos = {item: k for k, item in enumerate(order)}
        return all(
            pos[x] < pos[y] < pos[z] or pos[z] < pos[y] < pos[x]
            for x, y, z in self.triplets
        )


def gen_betweenness(
    inst: BetweennessInstance, item_order: Sequence[str]
) -> tuple[FlatClusteredGraph, LayoutConfig]:
    """Instance of the layout problem encoding ``inst`` under a given item order.

    ``item_order`` (a permutation of the items: a candidate solution or an
    adversarial order) becomes the fixed row-column order of every large
    matrix. The fixed square placement keeps every pipe clear of third
    squares; all coordinates are small integers.
    """
    m = len(inst.triplets)
    h = len(inst.items)
    if m < 1:
        raise ValueError("construction needs at least one triplet")
    if sorted(item_order) != sorted(inst.items):
        raise ValueError("item_order must be a permutation of the items")

    clusters: dict[str, list[str]] = {}
    orders: dict[str, list[str]] = {}
    squares: dict[str, Square] = {}
    edges: list[InterEdge] = []

    def main(i: int) -> str:
        return f"m{i}"

    def member(i: int, item: str) -> str:
        return f"m{i}.{item}"

    # large matrices: one per triplet, same y-range, left to right
    for i in range(1, m + 1):
        cid = main(i)
        clusters[cid] = [f"{cid}.x"] + [member(i, it) for it in inst.items]
        orders[cid] = [f"{cid}.x"] + [member(i, it) for it in item_order]
        squares[cid] = Square(6 + (i - 1) * 12, 0, 8)

    # the two small matrices stacked left of the first large one
    clusters["src"] = ["src.x"]
    orders["src"] = ["src.x"]
    squares["src"] = Square(0, 4, 1)
    clusters["fan"] = ["fan.u"]
    orders["fan"] = ["fan.u"]
    squares["fan"] = Square(0, 1, 1)

    pos = {item: k for k, item in enumerate(item_order)}
    for i, (x, y, z) in enumerate(inst.triplets, start=1):
        cid = f"top{i}"
        clusters[cid] = [f"{cid}.a", f"{cid}.b"]
        # the 2x2 matrix order mirrors the relative position of the
        # triplet's outer items, as in the planar witness drawing
        if pos[x] > pos[z]:
            orders[cid] = [f"{cid}.a", f"{cid}.b"]
        else:
            orders[cid] = [f"{cid}.b", f"{cid}.a"]
        gap_left = 1 if i == 1 else squares[main(i - 1)].max_x
        squares[cid] = Square(gap_left + 1, 9, 2)

    for i in range(1, m):  # order-preserving
        for it in inst.items:
            edges.append(InterEdge(f"op{i}.{it}", member(i, it), member(i + 1, it)))
    for it in inst.items:  # side-filling
        edges.append(InterEdge(f"fill.{it}", "fan.u", member(1, it)))
    edges.append(InterEdge("prot0", "src.x", "m1.x"))  # protecting
    for i in range(1, m):
        edges.append(InterEdge(f"prot{i}", f"m{i}.x", f"m{i + 1}.x"))
    for i, (x, y, z) in enumerate(inst.triplets, start=1):  # corner + triplet
        edges.append(InterEdge(f"corner{i}.a", f"m{i}.x", f"top{i}.a"))
        edges.append(InterEdge(f"corner{i}.b", f"m{i}.x", f"top{i}.b"))
        edges.append(InterEdge(f"bt{i}.x", member(i, x), f"top{i}.a"))
        edges.append(InterEdge(f"bt{i}.ya", member(i, y), f"top{i}.a"))
        edges.append(InterEdge(f"bt{i}.yb", member(i, y), f"top{i}.b"))
        edges.append(InterEdge(f"bt{i}.z", member(i, z), f"top{i}.b"))

    g = FlatClusteredGraph(clusters=clusters, inter_edges=edges)
    cfg = LayoutConfig(squares=squares, orders=orders)
    issues = validate_instance(g, cfg)
    assert not issues, issues
    return g, cfg


def expected_betweenness_edge_count(h: int, m: int) -> int:
    """(m-1)h order-preserving + h side-filling + m protecting + 2m corner
    + 4m triplet edges."""
    return (m - 1) * h + h + m + 2 * m + 4 * m


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def enumerate_feasible_sides(
    g: FlatClusteredGraph,
    cfg: LayoutConfig,
    restrict_no_sweep: bool = False,
) -> dict[str, list[tuple[SidePair, tuple[tuple[int, int], tuple[int, int]]]]]:
    """Per edge: every side pair whose straight segment avoids both incident
    squares, with its integer-scaled segment, ordered by world letters
    T < R < B < L. With ``restrict_no_sweep`` the sweep drawings are removed.
    """
    scale = integer_scale(g, cfg)
    rects = {cid: scaled_square(sq, scale) for cid, sq in cfg.squares.items()}

    def anch(vertex: str, side: Side) -> tuple[int, int]:
        cid = g.cluster_of[vertex]
        return scaled_anchor(
            rects[cid], cfg.order_index(cid, vertex), len(g.clusters[cid]), side
        )

    frames: dict[tuple[str, str], tuple] = {}

    def frame_of(cu: str, cv: str):
        key = tuple(sorted((cu, cv)))
        if key not in frames:
            frame, arrangement = fz.canonicalize(rects[key[0]], rects[key[1]])
            role_a = key[0] if frame.first_is_a else key[1]
            ra = fz.square_rect(rects[key[0] if frame.first_is_a else key[1]])
            rb = fz.square_rect(rects[key[1] if frame.first_is_a else key[0]])
            frames[key] = (frame, arrangement, role_a, frame.map_rect(ra), frame.map_rect(rb))
        return frames[key]

    out: dict[str, list] = {}
    for e in sorted(g.inter_edges, key=lambda e: e.id):
        cu, cv = g.edge_clusters(e)
        qu, qv = rects[cu], rects[cv]
        cands = []
        for su in SIDES:
            pu = anch(e.u, su)
            for sv in SIDES:
                pv = anch(e.v, sv)
                seg = Segment(Point(*pu), Point(*pv))
                if not (
                    segment_avoids_square(seg, qu) and segment_avoids_square(seg, qv)
                ):
                    continue
                if restrict_no_sweep:
                    frame, arrangement, role_a, rect_a, rect_b = frame_of(cu, cv)
                    u_in_a = cu == role_a
                    pa, pb = (e.u, e.v) if u_in_a else (e.v, e.u)
                    y_u = frame.map_point(anch(pa, frame.unmap_side("R")))[1]
                    y_v = frame.map_point(anch(pb, frame.unmap_side("L")))[1]
                    pair_c = (
                        (frame.map_side(su), frame.map_side(sv))
                        if u_in_a
                        else (frame.map_side(sv), frame.map_side(su))
                    )
                    if fz.is_s_drawn(arrangement, pair_c, y_u, y_v, rect_a, rect_b):
                        continue
                cands.append(((su, sv), (pu, pv)))
        cands.sort(key=lambda c: (SIDE_ORDER[c[0][0]], SIDE_ORDER[c[0][1]]))
        out[e.id] = cands
    return out


def brute_force_oracle(
    g: FlatClusteredGraph,
    cfg: LayoutConfig,
    restrict_no_sweep: bool = False,
    max_edges: int = 12,
) -> tuple[int, dict[str, SidePair]]:
    """Minimum local crossing count over every feasible side assignment.

    Independent ground truth for the solvers: candidates come from a direct
    square-avoidance filter, crossings from pairwise segment tests, and the
    search is plain branch-and-bound over the assignment product. Returns
    the minimum and the first assignment attaining it in enumeration order.
    """
    issues = validate_instance(
        g, LayoutConfig(squares=cfg.squares, orders=cfg.orders, sides=None)
    )
    if issues:
        raise ValueError("; ".join(issues))
    if len(g.inter_edges) > max_edges:
        raise ValueError(
            f"{len(g.inter_edges)} edges exceed the oracle guard ({max_edges})"
        )
    cands = enumerate_feasible_sides(g, cfg, restrict_no_sweep)
    eids = sorted(cands)
    if any(not cands[e] for e in eids):
        raise ValueError("an edge has no feasible side pair")
    cluster_sets = {
        e.id: set(g.edge_clusters(e)) for e in g.inter_edges
    }

    memo: dict[tuple[str, int, str, int], int] = {}

    def weight(e1: str, i1: int, e2: str, i2: int) -> int:
        shared = cluster_sets[e1] & cluster_sets[e2]
        if not shared:
            return 0
        key = (e1, i1, e2, i2)
        hit = memo.get(key)
        if hit is None:
            s1 = cands[e1][i1][1]
            s2 = cands[e2][i2][1]
            hit = len(shared) if segments_cross(s1, s2) else 0
            memo[key] = hit
        return hit

    best_chi = [None]
    best_pick: list[list[int] | None] = [None]
    pick: list[int] = [0] * len(eids)

    def search(k: int, acc: int) -> None:
        if best_chi[0] is not None and acc >= best_chi[0]:
            return
        if k == len(eids):
            best_chi[0] = acc
            best_pick[0] = pick.copy()
            return
        for i in range(len(cands[eids[k]])):
            pick[k] = i
            extra = 0
            for prev in range(k):
                extra += weight(eids[prev], pick[prev], eids[k], i)
                if best_chi[0] is not None and acc + extra >= best_chi[0]:
                    break
            search(k + 1, acc + extra)

    search(0, 0)
    assert best_chi[0] is not None and best_pick[0] is not None
    sides = {
        eid: cands[eid][best_pick[0][k]][0] for k, eid in enumerate(eids)
    }
    return best_chi[0], sides


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def random_instance(
    clusters: int,
    cluster_size: int,
    edges: int,
    seed: int,
    attempts: int = 64,
) -> tuple[FlatClusteredGraph, LayoutConfig]:
    """Reproducible random instance with pairwise disjoint squares.

    Squares sit on a jittered grid; inter-cluster edges are sampled
    uniformly (without replacement) over the cross-cluster vertex pairs of
    cluster pairs whose pipe stays clear of every third square, so sampled
    adjacencies are always usable by the solvers. Row-column orders are
    random permutations. Deterministic for a given seed.
    """
    if clusters < 2 or cluster_size < 1:
        raise ValueError("need at least 2 clusters with at least 1 vertex each")
    rng = random.Random(seed)
    width = 1
    while width * width < clusters:
        width += 1

    cluster_ids = [f"c{i:02d}" for i in range(clusters)]
    members = {
        cid: [f"{cid}.v{j}" for j in range(cluster_size)] for cid in cluster_ids
    }

    for _ in range(attempts):
        squares: dict[str, Square] = {}
        cells = list(range(width * width))
        rng.shuffle(cells)
        for cid, cell in zip(cluster_ids, cells):
            gx, gy = cell % width, cell // width
            jx, jy = rng.randint(0, 3), rng.randint(0, 3)
            squares[cid] = Square(10 * gx + jx, 10 * gy + jy, 4)

        usable: list[tuple[str, str]] = []
        for i, ca in enumerate(cluster_ids):
            for cb in cluster_ids[i + 1 :]:
                pipe = pipe_of(squares[ca], squares[cb])
                if not any(
                    pipe_intersects_square(pipe, squares[ck])
                    for ck in cluster_ids
                    if ck not in (ca, cb)
                ):
                    usable.append((ca, cb))

        pool = [
            (u, v)
            for ca, cb in usable
            for u in members[ca]
            for v in members[cb]
        ]
        if len(pool) < edges:
            continue
        chosen = rng.sample(pool, edges)
        inter = [
            InterEdge(f"e{k:03d}", u, v) for k, (u, v) in enumerate(sorted(chosen))
        ]
        orders = {}
        for cid in cluster_ids:
            perm = members[cid].copy()
            rng.shuffle(perm)
            orders[cid] = perm
        g = FlatClusteredGraph(clusters=dict(members), inter_edges=inter)
        cfg = LayoutConfig(squares=squares, orders=orders)
        assert not validate_instance(g, cfg)
        return g, cfg
    raise ValueError("could not place squares with enough usable cluster pairs")
