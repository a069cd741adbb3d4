"""Core data model: flat clustered graphs, square/order/side assignments, drawings.

All types are immutable after construction (by convention; they are plain
dataclasses) and safe to share across threads. Operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rational import to_fraction

Side = str  # one of "T", "R", "B", "L"

#: Canonical side order used for deterministic candidate enumeration.
SIDE_ORDER: dict[Side, int] = {"T": 0, "R": 1, "B": 2, "L": 3}
SIDES: tuple[Side, ...] = ("T", "R", "B", "L")


@dataclass(frozen=True)
class Square:
    """Axis-aligned square; y grows upward, so "top" means larger y."""

    min_x: Fraction
    min_y: Fraction
    size: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "min_x", to_fraction(self.min_x))
        object.__setattr__(self, "min_y", to_fraction(self.min_y))
        object.__setattr__(self, "size", to_fraction(self.size))

    @property
    def max_x(self) -> Fraction:
        return self.min_x + self.size

    @property
    def max_y(self) -> Fraction:
        return self.min_y + self.size

    def corners(self) -> list[tuple[Fraction, Fraction]]:
        return [
            (self.min_x, self.min_y),
            (self.max_x, self.min_y),
            (self.max_x, self.max_y),
            (self.min_x, self.max_y),
        ]

    def disjoint_from(self, other: "Square") -> bool:
        """True iff the closed squares share no point (boundaries included)."""
        return (
            self.max_x < other.min_x
            or other.max_x < self.min_x
            or self.max_y < other.min_y
            or other.max_y < self.min_y
        )


@dataclass(frozen=True)
class InterEdge:
    id: str
    u: str
    v: str

    def endpoints(self) -> tuple[str, str]:
        return (self.u, self.v)


@dataclass
class FlatClusteredGraph:
    """A graph with a one-level partition of its vertices into clusters.

    ``clusters`` maps cluster id to its vertex ids. Intra-cluster edges are
    stored but algorithmically inert: they only fill the matrix cells when
    rendering. Inter-cluster edges carry caller-supplied stable ids; all
    deterministic iteration in the solvers is lexicographic by edge id.
    """

    clusters: dict[str, list[str]]
    intra_edges: list[tuple[str, str]] = field(default_factory=list)
    inter_edges: list[InterEdge] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.cluster_of: dict[str, str] = {}
        for cid, members in self.clusters.items():
            for v in members:
                # last write wins here; validate_instance reports duplicates
                self.cluster_of[v] = cid
        self.edges_by_id: dict[str, InterEdge] = {e.id: e for e in self.inter_edges}

    @property
    def vertices(self) -> list[str]:
        return [v for members in self.clusters.values() for v in members]

    def edge_clusters(self, edge: InterEdge) -> tuple[str, str]:
        return (self.cluster_of[edge.u], self.cluster_of[edge.v])


@dataclass
class LayoutConfig:
    """Square assignment, row-column orders, and (optionally) fixed sides.

    ``orders[c]`` lists cluster ``c``'s vertices top-to-bottom / left-to-right;
    ``sides[eid]`` gives the side pair (at u's cluster, at v's cluster).
    """

    squares: dict[str, Square]
    orders: dict[str, list[str]]
    sides: dict[str, tuple[Side, Side]] | None = None

    def order_index(self, cluster: str, vertex: str) -> int:
        """1-based position of ``vertex`` in its cluster's row-column order."""
        return self.orders[cluster].index(vertex) + 1


@dataclass
class Drawing:
    """A concrete side assignment plus its straight-segment realization.

    ``chi`` counts local crossings: a crossing between two edges is charged
    once to every cluster the two edges are both incident to, and chi is the
    sum over clusters. ``locally_planar`` means chi == 0 and no edge segment
    meets an incident matrix square except at its own endpoints.
    """

    edge_sides: dict[str, tuple[Side, Side]]
    edge_segments: dict[str, tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]]
    chi_per_cluster: dict[str, int]
    chi: int
    locally_planar: bool
    unsatisfied_clauses: int = 0
    matrix_violations: list[str] = field(default_factory=list)


ValidationReport = list  # list[str]; empty iff the instance is well-formed


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def validate_instance(g: FlatClusteredGraph, cfg: LayoutConfig) -> list[str]:
    """Check every structural invariant; violations are data, not failures."""
    issues: list[str] = []

    seen: dict[str, str] = {}
    for cid, members in g.clusters.items():
        if not members:
            issues.append(f"cluster {cid!r} is empty")
        for v in members:
            if v in seen:
                issues.append(
                    f"vertex {v!r} appears in clusters {seen[v]!r} and {cid!r}: "
                    "clusters must partition the vertex set"
                )
            seen[v] = cid

    ids: set[str] = set()
    pairs: set[frozenset[str]] = set()
    for e in g.inter_edges:
        if e.id in ids:
            issues.append(f"duplicate edge id {e.id!r}")
        ids.add(e.id)
        for end in e.endpoints():
            if end not in seen:
                issues.append(f"edge {e.id!r}: dangling endpoint {end!r}")
        if e.u == e.v:
            issues.append(f"edge {e.id!r} is a self-loop")
        elif e.u in seen and e.v in seen:
            if seen[e.u] == seen[e.v]:
                issues.append(
                    f"edge {e.id!r}: endpoints lie in the same cluster {seen[e.u]!r}"
                )
            key = frozenset((e.u, e.v))
            if key in pairs:
                issues.append(f"edge {e.id!r}: parallel edge between {e.u!r} and {e.v!r}")
            pairs.add(key)

    for u, v in g.intra_edges:
        if u not in seen or v not in seen:
            issues.append(f"intra edge ({u!r}, {v!r}): unknown endpoint")
        elif seen[u] != seen[v]:
            issues.append(f"intra edge ({u!r}, {v!r}) spans two clusters")

    for cid in g.clusters:
        if cid not in cfg.squares:
            issues.append(f"cluster {cid!r} has no square")
    for cid, sq in cfg.squares.items():
        if cid not in g.clusters:
            issues.append(f"square for unknown cluster {cid!r}")
        if sq.size <= 0:
            issues.append(f"square of {cid!r}: size must be positive")

    square_ids = sorted(cfg.squares)
    for i, ca in enumerate(square_ids):
        for cb in square_ids[i + 1 :]:
            if cfg.squares[ca].size > 0 and cfg.squares[cb].size > 0:
                if not cfg.squares[ca].disjoint_from(cfg.squares[cb]):
                    issues.append(f"squares of {ca!r} and {cb!r} are not disjoint")

    for cid, members in g.clusters.items():
        order = cfg.orders.get(cid)
        if order is None:
            issues.append(f"cluster {cid!r} has no row-column order")
            continue
        if sorted(order) != sorted(members) or len(set(order)) != len(order):
            issues.append(f"order of {cid!r} is not a bijection with its vertices")

    if cfg.sides is not None:
        for e in g.inter_edges:
            pair = cfg.sides.get(e.id)
            if pair is None:
                issues.append(f"edge {e.id!r} has no side assignment")
            elif not (len(pair) == 2 and all(s in SIDE_ORDER for s in pair)):
                issues.append(f"edge {e.id!r}: sides must be T/B/L/R pairs")
        for eid in cfg.sides:
            if eid not in g.edges_by_id:
                issues.append(f"side assignment for unknown edge {eid!r}")

    return issues


def adjacent_cluster_pairs(
    g: FlatClusteredGraph,
) -> list[tuple[str, str, list[str]]]:
    """Unordered cluster pairs joined by at least one inter-cluster edge.

    Pairs are sorted lexicographically and the per-pair edge id lists
    partition the inter-cluster edge set.
    """
    grouped: dict[tuple[str, str], list[str]] = {}
    for e in g.inter_edges:
        ca, cb = sorted(g.edge_clusters(e))
        grouped.setdefault((ca, cb), []).append(e.id)
    return [(ca, cb, sorted(eids)) for (ca, cb), eids in sorted(grouped.items())]


def cluster_triplets(g: FlatClusteredGraph) -> list[tuple[str, str, str]]:
    """All (apex, b, c) with b and c both adjacent to the apex, b < c."""
    neighbors: dict[str, set[str]] = {}
    for ca, cb, _ in adjacent_cluster_pairs(g):
        neighbors.setdefault(ca, set()).add(cb)
        neighbors.setdefault(cb, set()).add(ca)
    out: list[tuple[str, str, str]] = []
    for apex in sorted(neighbors):
        around = sorted(neighbors[apex])
        for i, b in enumerate(around):
            for c in around[i + 1 :]:
                out.append((apex, b, c))
    return out
