"""Side-assignment solvers for fixed matrix positions and fixed orders.

Three entry points share the same machinery:

* :func:`solve_exact_fixed_order` decides whether a locally planar monotone
  drawing exists, enumerating per-pair sweep-edge guesses and solving one
  2-SAT formula per guess.
* :func:`editor_heuristic` restricts to drawings without sweep edges, so
  a single formula covers the instance; if it is unsatisfiable
  the MAX-2-SAT optimum (exact for small formulas, local search otherwise)
  picks a drawing with few local crossings.
* :func:`check_fixed_order_and_side` verifies a fully specified assignment.

All geometry runs on an integer-rescaled copy of the scene; returned
drawings carry exact rational world coordinates, and the authoritative
crossing number always comes from a geometric recount, never from a clause
count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import feasibility as fz
from .feasibility import CanonicalFrame, Rect
from .geometry import (
    count_local_crossings,
    edge_segments,
    integer_scale,
    segments_cross,
    validate_pipes,
)
from .model import (
    Drawing,
    FlatClusteredGraph,
    InterEdge,
    LayoutConfig,
    Side,
    adjacent_cluster_pairs,
    cluster_triplets,
    validate_instance,
)
from .sat import TwoSatFormula, max_sat_exact, max_sat_heuristic, solve_2sat

SidePair = tuple[Side, Side]
PairKey = tuple[str, str]


class LayoutError(Exception):
    pass


class InvalidInstanceError(LayoutError):
    def __init__(self, issues: list[str]):
        super().__init__("; ".join(issues))
        self.issues = issues


class PipeViolationError(LayoutError):
    def __init__(self, issues: list[str]):
        super().__init__("; ".join(issues))
        self.issues = issues


@dataclass(frozen=True)
class PairGuess:
    """Per-pair decision: no sweep edge (choice None), or one pinned edge
    drawn as a specific sweep; the pinned pair is given as world sides at
    the edge's (u, v) endpoints."""

    pair: PairKey
    choice: tuple[str, SidePair] | None


@dataclass(frozen=True)
class EdgeVariableEntry:
    """How one edge is encoded: fixed to one side pair, a binary variable
    between a canonical pair (index 0, the true literal) and its
    alternative, or an explicit branch over more than two pairs."""

    kind: str  # "fixed" | "binary" | "branch"
    variable: int | None
    options: tuple[SidePair, ...]  # world sides at (u, v), canonical first


@dataclass
class EdgeVariableMap:
    entries: dict[str, EdgeVariableEntry]

    def variable_count(self) -> int:
        return sum(1 for e in self.entries.values() if e.kind == "binary")


# ---------------------------------------------------------------------------
# Scene: integer-rescaled squares and anchors
# ---------------------------------------------------------------------------

_EXIT_AXIS: dict[Side, tuple[int, int]] = {
    "R": (0, 1),
    "L": (0, -1),
    "T": (1, 1),
    "B": (1, -1),
}

_CANONICAL_PAIRS: tuple[SidePair, ...] = tuple(
    (sa, sb)
    for sa in ("T", "R", "B", "L")
    for sb in ("T", "R", "B", "L")
)


@dataclass
class _Candidate:
    canonical: SidePair  # letters in the pair's canonical frame (role a, role b)
    world_u: Side
    world_v: Side
    seg: tuple[tuple[int, int], tuple[int, int]]
    s_drawn: bool


@dataclass
class _EdgePlan:
    edge: InterEdge
    cands: list[_Candidate]

    def world_pair(self, index: int) -> SidePair:
        c = self.cands[index]
        return (c.world_u, c.world_v)


@dataclass
class _PairContext:
    key: PairKey
    frame: CanonicalFrame
    arrangement: str
    edge_ids: list[str]
    plans: dict[str, _EdgePlan]
    internal_pairs: list[tuple[str, str]] = field(default_factory=list)


class _Engine:
    """Shared per-instance state: rescaled geometry, candidate plans,
    lazily memoized pairwise crossing tests, and formula assembly."""

    def __init__(self, g: FlatClusteredGraph, cfg: LayoutConfig):
        self.g = g
        self.cfg = cfg
        self.scale = integer_scale(g, cfg)
        self.rects: dict[str, Rect] = {}
        for cid, sq in cfg.squares.items():
            x0 = int(sq.min_x * self.scale)
            y0 = int(sq.min_y * self.scale)
            s = int(sq.size * self.scale)
            self.rects[cid] = Rect(x0, y0, x0 + s, y0 + s)
        self._anchors: dict[tuple[str, Side], tuple[int, int]] = {}
        self.pairs = adjacent_cluster_pairs(g)
        self.contexts: dict[PairKey, _PairContext] = {}
        for ca, cb, eids in self.pairs:
            self.contexts[(ca, cb)] = self._build_context(ca, cb, eids)
        self.triplet_pairs: list[tuple[PairKey, PairKey, list[tuple[str, str]]]] = []
        edges_of: dict[PairKey, list[str]] = {
            (ca, cb): eids for ca, cb, eids in self.pairs
        }
        for apex, b, c in cluster_triplets(g):
            k1 = tuple(sorted((apex, b)))
            k2 = tuple(sorted((apex, c)))
            combos = [(e, f) for e in edges_of[k1] for f in edges_of[k2]]
            self.triplet_pairs.append((k1, k2, combos))
        self.plans: dict[str, _EdgePlan] = {}
        for ctx in self.contexts.values():
            self.plans.update(ctx.plans)
        self._cross: dict[tuple[str, int, str, int], bool] = {}

    # -- geometry ----------------------------------------------------------

    def anchor(self, vertex: str, side: Side) -> tuple[int, int]:
        key = (vertex, side)
        hit = self._anchors.get(key)
        if hit is not None:
            return hit
        cid = self.g.cluster_of[vertex]
        rect = self.rects[cid]
        n = len(self.g.clusters[cid])
        j = self.cfg.order_index(cid, vertex)
        size = rect.max_x - rect.min_x
        along = (2 * j - 1) * size // (2 * n)
        if side == "T":
            p = (rect.min_x + along, rect.max_y)
        elif side == "B":
            p = (rect.min_x + along, rect.min_y)
        elif side == "L":
            p = (rect.min_x, rect.max_y - along)
        else:
            p = (rect.max_x, rect.max_y - along)
        self._anchors[key] = p
        return p

    def _build_context(self, ca: str, cb: str, eids: list[str]) -> _PairContext:
        ra, rb = self.rects[ca], self.rects[cb]
        frame, arrangement = fz.canonicalize_rects(ra, rb)
        role_a = ca if frame.first_is_a else cb
        rect_a = frame.map_rect(ra if frame.first_is_a else rb)
        rect_b = frame.map_rect(rb if frame.first_is_a else ra)
        world_r = frame.unmap_side("R")
        world_l = frame.unmap_side("L")
        plans: dict[str, _EdgePlan] = {}
        for eid in eids:
            e = self.g.edges_by_id[eid]
            u_in_a = self.g.cluster_of[e.u] == role_a
            pa, pb = (e.u, e.v) if u_in_a else (e.v, e.u)
            y_u = frame.map_point(self.anchor(pa, world_r))[1]
            y_v = frame.map_point(self.anchor(pb, world_l))[1]
            cands: list[_Candidate] = []
            for sa_c, sb_c in _CANONICAL_PAIRS:
                sa_w = frame.unmap_side(sa_c)
                sb_w = frame.unmap_side(sb_c)
                anchor_a = self.anchor(pa, sa_w)
                anchor_b = self.anchor(pb, sb_w)
                if not (
                    _leaves_outward(anchor_a, anchor_b, sa_w)
                    and _leaves_outward(anchor_b, anchor_a, sb_w)
                ):
                    continue
                cands.append(
                    _Candidate(
                        canonical=(sa_c, sb_c),
                        world_u=sa_w if u_in_a else sb_w,
                        world_v=sb_w if u_in_a else sa_w,
                        seg=(anchor_a, anchor_b) if u_in_a else (anchor_b, anchor_a),
                        s_drawn=fz.is_s_drawn(
                            arrangement, (sa_c, sb_c), y_u, y_v, rect_a, rect_b
                        ),
                    )
                )
            plans[eid] = _EdgePlan(edge=e, cands=cands)
        ctx = _PairContext(
            key=(ca, cb),
            frame=frame,
            arrangement=arrangement,
            edge_ids=list(eids),
            plans=plans,
        )
        ctx.internal_pairs = [
            (e1, e2) for i, e1 in enumerate(eids) for e2 in eids[i + 1 :]
        ]
        return ctx

    def cross(self, e1: str, i1: int, e2: str, i2: int) -> bool:
        if e2 < e1:
            e1, i1, e2, i2 = e2, i2, e1, i1
        key = (e1, i1, e2, i2)
        hit = self._cross.get(key)
        if hit is None:
            hit = segments_cross(
                self.plans[e1].cands[i1].seg, self.plans[e2].cands[i2].seg
            )
            self._cross[key] = hit
        return hit

    # -- candidate choice sets ----------------------------------------------

    def case2_choices(self, key: PairKey) -> dict[str, list[int]]:
        ctx = self.contexts[key]
        out: dict[str, list[int]] = {}
        for eid in ctx.edge_ids:
            picks = [i for i, c in enumerate(ctx.plans[eid].cands) if not c.s_drawn]
            out[eid] = picks
        return out

    def case1_choices(
        self, key: PairKey, star: str, star_index: int
    ) -> dict[str, list[int]] | None:
        """Candidates per edge once ``star`` is pinned to a sweep drawing;
        None when some edge cannot avoid crossing the pinned one."""
        ctx = self.contexts[key]
        out: dict[str, list[int]] = {star: [star_index]}
        for eid in ctx.edge_ids:
            if eid == star:
                continue
            picks = [
                i
                for i in range(len(ctx.plans[eid].cands))
                if not self.cross(eid, i, star, star_index)
            ]
            if not picks:
                return None
            out[eid] = picks
        return out

    # -- formula assembly ---------------------------------------------------

    def edge_pair_lists(
        self, active: Iterable[PairKey]
    ) -> list[tuple[str, str, int]]:
        """Cluster-sharing edge pairs among the active cluster pairs, each
        with its crossing weight: edges of one pair share two clusters, so
        a crossing between them counts twice in chi; triplet combinations
        share only the apex."""
        active_set = set(active)
        out: list[tuple[str, str, int]] = []
        for key in sorted(active_set):
            out.extend((e1, e2, 2) for e1, e2 in self.contexts[key].internal_pairs)
        for k1, k2, combos in self.triplet_pairs:
            if k1 in active_set and k2 in active_set:
                out.extend((e, f, 1) for e, f in combos)
        return out

    def assemble(
        self,
        choices: dict[str, list[int]],
        edge_pairs: Sequence[tuple[str, str, int]],
    ) -> tuple[TwoSatFormula, dict[str, int], int]:
        """Blocking clauses for every crossing candidate combination.

        A blocked combination is emitted once per cluster the two edges
        share, so the violated-clause count of an assignment equals its
        chi. Returns the formula, the edge-to-variable map (binary edges
        only, dense in edge id order), and the chi contribution forced by
        single-candidate edges.
        """
        var_of = {
            eid: k
            for k, eid in enumerate(
                sorted(e for e, picks in choices.items() if len(picks) == 2)
            )
        }
        formula = TwoSatFormula(len(var_of))
        forced = 0
        for e1, e2, weight in edge_pairs:
            picks1, picks2 = choices[e1], choices[e2]
            for pos1, i in enumerate(picks1):
                for pos2, j in enumerate(picks2):
                    if not self.cross(e1, i, e2, j):
                        continue
                    lits = []
                    for eid, pos in ((e1, pos1), (e2, pos2)):
                        if len(choices[eid]) == 2:
                            # literal saying "edge avoids this choice"
                            lits.append((var_of[eid], pos == 1))
                    for _ in range(weight):
                        if len(lits) == 2:
                            formula.add_clause(lits[0], lits[1])
                        elif len(lits) == 1:
                            formula.add_unit(lits[0])
                        else:
                            forced += 1
        return formula, var_of, forced

    def variable_map(
        self, choices: dict[str, list[int]], var_of: dict[str, int]
    ) -> EdgeVariableMap:
        entries: dict[str, EdgeVariableEntry] = {}
        for eid, picks in choices.items():
            plan = self.plans[eid]
            options = tuple(plan.world_pair(i) for i in picks)
            if len(picks) == 1:
                entries[eid] = EdgeVariableEntry("fixed", None, options)
            elif len(picks) == 2:
                entries[eid] = EdgeVariableEntry("binary", var_of[eid], options)
            else:
                entries[eid] = EdgeVariableEntry("branch", None, options)
        return EdgeVariableMap(entries)


def _leaves_outward(anchor: tuple[int, int], other: tuple[int, int], side: Side) -> bool:
    # a straight edge meets its own square only at the anchor iff it exits
    # through that side's outward half-plane immediately
    axis, sign = _EXIT_AXIS[side]
    return sign * (other[axis] - anchor[axis]) > 0


# ---------------------------------------------------------------------------
# Public formula builders
# ---------------------------------------------------------------------------


def _check_valid(g: FlatClusteredGraph, cfg: LayoutConfig) -> None:
    issues = validate_instance(g, cfg)
    if issues:
        raise InvalidInstanceError(issues)


def _order_free_config(cfg: LayoutConfig) -> LayoutConfig:
    return LayoutConfig(squares=cfg.squares, orders=cfg.orders, sides=None)


def build_pair_formula(
    g: FlatClusteredGraph,
    cfg: LayoutConfig,
    pair: PairKey,
    guess: PairGuess | None = None,
) -> tuple[TwoSatFormula, EdgeVariableMap]:
    """Formula constraining one adjacent pair under one guess.

    With no guess (or ``choice=None``) every edge takes its non-sweep
    candidates; with a pinned sweep edge the remaining edges keep only the
    candidates that do not cross it. An impossible configuration comes back
    as a trivially false formula. Edges left with more than two candidates
    (possible next to the pinned edge) are exposed as branch entries and
    contribute no clauses here; the exact solver enumerates them.
    """
    _check_valid(g, _order_free_config(cfg))
    eng = _Engine(g, cfg)
    key = tuple(sorted(pair))
    if key not in eng.contexts:
        raise ValueError(f"clusters {pair} are not adjacent")
    choice = guess.choice if guess is not None else None
    if choice is None:
        choices = eng.case2_choices(key)
    else:
        star, world_pair = choice
        plan = eng.plans[star]
        star_index = next(
            (
                i
                for i in range(len(plan.cands))
                if plan.world_pair(i) == tuple(world_pair) and plan.cands[i].s_drawn
            ),
            None,
        )
        if star_index is None:
            raise ValueError(f"{world_pair} is not a sweep drawing of edge {star!r}")
        choices = eng.case1_choices(key, star, star_index)
        if choices is None:
            fallback = eng.case2_choices(key)
            _, var_of, _ = eng.assemble(fallback, [])
            vmap = eng.variable_map(fallback, var_of)
            return TwoSatFormula(len(var_of), trivially_false=True), vmap
    narrowed = {e: p for e, p in choices.items() if len(p) <= 2}
    formula, var_of, forced = eng.assemble(
        narrowed, [(e1, e2, 2) for e1, e2 in eng.contexts[key].internal_pairs
                   if e1 in narrowed and e2 in narrowed]
    )
    formula.trivially_false = forced > 0
    return formula, eng.variable_map(choices, var_of)


def build_triplet_clauses(
    g: FlatClusteredGraph,
    cfg: LayoutConfig,
    apex: str,
    b: str,
    c: str,
    choices: dict[str, list[SidePair]],
) -> list[tuple[tuple[str, SidePair], tuple[str, SidePair]]]:
    """Blocked side-pair combinations between the two pair formulas of a
    triplet: one entry per crossing combination of an edge in (apex, b)
    with an edge in (apex, c). ``choices`` maps edge ids to their allowed
    world side pairs."""
    _check_valid(g, _order_free_config(cfg))
    eng = _Engine(g, cfg)
    b, c = sorted((b, c))
    k1 = tuple(sorted((apex, b)))
    k2 = tuple(sorted((apex, c)))
    blocked = []
    for _, _, combos in [t for t in eng.triplet_pairs if t[0] == k1 and t[1] == k2]:
        for e, f in combos:
            for pe in choices.get(e, []):
                ie = _candidate_index(eng.plans[e], pe)
                for pf in choices.get(f, []):
                    jf = _candidate_index(eng.plans[f], pf)
                    if eng.cross(e, ie, f, jf):
                        blocked.append(((e, pe), (f, pf)))
    return blocked


def _candidate_index(plan: _EdgePlan, world_pair: SidePair) -> int:
    for i in range(len(plan.cands)):
        if plan.world_pair(i) == tuple(world_pair):
            return i
    raise ValueError(
        f"{world_pair} is not a monotone-feasible side pair of edge {plan.edge.id!r}"
    )


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------


def decode_assignment(
    vmap: EdgeVariableMap,
    assignment: Sequence[bool],
    g: FlatClusteredGraph,
    cfg: LayoutConfig,
    unsatisfied: int = 0,
) -> Drawing:
    """Turn a variable assignment into a drawing.

    Binary edges take their canonical pair when the variable is true; the
    crossing number is recomputed geometrically and is authoritative.
    Branch entries must already have been resolved by enumeration.
    """
    sides: dict[str, SidePair] = {}
    for eid, entry in sorted(vmap.entries.items()):
        if entry.kind == "fixed":
            sides[eid] = entry.options[0]
        elif entry.kind == "binary":
            assert entry.variable is not None
            sides[eid] = entry.options[0 if assignment[entry.variable] else 1]
        else:
            raise ValueError(f"edge {eid!r} is unresolved (branch entry)")
    solved = LayoutConfig(squares=cfg.squares, orders=cfg.orders, sides=sides)
    chi, per_cluster, violations = count_local_crossings(g, solved)
    segments = edge_segments(g, solved)
    return Drawing(
        edge_sides=sides,
        edge_segments={e: (tuple(s.a), tuple(s.b)) for e, s in segments.items()},
        chi_per_cluster=per_cluster,
        chi=chi,
        locally_planar=chi == 0 and not violations,
        unsatisfied_clauses=unsatisfied,
        matrix_violations=violations,
    )


# ---------------------------------------------------------------------------
# Exact solver: guess enumeration
# ---------------------------------------------------------------------------


@dataclass
class _Option:
    key: tuple
    choices: dict[str, list[int]]


def _pair_options(eng: _Engine, key: PairKey) -> list[_Option]:
    """All per-pair guesses, sweep-pinned branches expanded, locally
    unsatisfiable ones dropped. Order: the no-sweep guess first, then by
    (edge id, candidate index, branch picks)."""
    ctx = eng.contexts[key]
    internal = [(e1, e2, 2) for e1, e2 in ctx.internal_pairs]
    raw: list[_Option] = [_Option(key=(0,), choices=eng.case2_choices(key))]
    for eid in ctx.edge_ids:
        plan = ctx.plans[eid]
        for k, cand in enumerate(plan.cands):
            if not cand.s_drawn:
                continue
            filtered = eng.case1_choices(key, eid, k)
            if filtered is None:
                continue
            branch_edges = sorted(e for e, p in filtered.items() if len(p) > 2)
            if not branch_edges:
                raw.append(_Option(key=(1, eid, k), choices=filtered))
                continue
            for picks in itertools.product(*(filtered[e] for e in branch_edges)):
                expanded = dict(filtered)
                for e, pick in zip(branch_edges, picks):
                    expanded[e] = [pick]
                raw.append(_Option(key=(1, eid, k) + picks, choices=expanded))
    viable: list[_Option] = []
    for opt in raw:
        formula, _, forced = eng.assemble(opt.choices, internal)
        if forced == 0 and solve_2sat(formula) is not None:
            viable.append(opt)
    return viable


def _merged(
    assigned: dict[PairKey, _Option]
) -> dict[str, list[int]]:
    merged: dict[str, list[int]] = {}
    for opt in assigned.values():
        merged.update(opt.choices)
    return merged


def _satisfiable(
    eng: _Engine, assigned: dict[PairKey, _Option]
) -> list[bool] | None:
    choices = _merged(assigned)
    formula, var_of, forced = eng.assemble(
        choices, eng.edge_pair_lists(assigned.keys())
    )
    if forced > 0:
        return None
    result = solve_2sat(formula)
    if result is None:
        return None
    return result


def solve_exact_fixed_order(
    g: FlatClusteredGraph, cfg: LayoutConfig
) -> Drawing | None:
    """Locally planar drawing with free sides, or None if none exists.

    Enumerates, for every adjacent pair, either "no sweep edge" or one
    pinned (edge, sweep drawing) choice, and tests the conjunction of all
    pair and triplet constraints for satisfiability. The enumeration is a
    depth-first product with two sound prunings: options unsatisfiable
    against the forced context are dropped up front, and any prefix whose
    accumulated formula is unsatisfiable is abandoned. Raises on malformed
    instances and on pipe violations.
    """
    _check_valid(g, _order_free_config(cfg))
    pairs = adjacent_cluster_pairs(g)
    pipe_issues = validate_pipes(cfg, [(ca, cb) for ca, cb, _ in pairs])
    if pipe_issues:
        raise PipeViolationError(pipe_issues)
    eng = _Engine(g, cfg)
    if not g.inter_edges:
        return decode_assignment(EdgeVariableMap({}), [], g, cfg)

    options: dict[PairKey, list[_Option]] = {}
    for key in sorted(eng.contexts):
        options[key] = _pair_options(eng, key)
        if not options[key]:
            return None

    # propagate forced pairs to a fixpoint, narrowing the option lists
    fixed: dict[PairKey, _Option] = {
        key: opts[0] for key, opts in options.items() if len(opts) == 1
    }
    if _satisfiable(eng, fixed) is None:
        return None
    changed = True
    while changed:
        changed = False
        for key in sorted(options):
            if key in fixed:
                continue
            kept = [
                opt
                for opt in options[key]
                if _satisfiable(eng, {**fixed, key: opt}) is not None
            ]
            if not kept:
                return None
            if len(kept) < len(options[key]):
                options[key] = kept
            if len(kept) == 1:
                fixed[key] = kept[0]
                changed = True

    open_keys = sorted(
        (key for key in options if key not in fixed),
        key=lambda key: (len(options[key]), key),
    )

    def dfs(level: int, assigned: dict[PairKey, _Option]) -> Drawing | None:
        assignment = _satisfiable(eng, assigned)
        if assignment is None:
            return None
        if level == len(open_keys):
            choices = _merged(assigned)
            formula, var_of, forced = eng.assemble(
                choices, eng.edge_pair_lists(assigned.keys())
            )
            assert forced == 0
            vmap = eng.variable_map(choices, var_of)
            drawing = decode_assignment(vmap, assignment, g, cfg)
            assert drawing.chi == 0 and not drawing.matrix_violations
            return drawing
        key = open_keys[level]
        for opt in options[key]:
            found = dfs(level + 1, {**assigned, key: opt})
            if found is not None:
                return found
        return None

    return dfs(0, dict(fixed))


# ---------------------------------------------------------------------------
# Fixed order + fixed side checker
# ---------------------------------------------------------------------------


def check_fixed_order_and_side(g: FlatClusteredGraph, cfg: LayoutConfig) -> Drawing:
    """Verdict for a fully specified assignment.

    An edge's side pair is monotone-feasible exactly when its straight
    segment meets each incident square only at its own endpoint, so the
    feasibility check and the matrix-violation scan coincide; the drawing
    is locally planar iff the recount finds no crossings and no violations.
    """
    _check_valid(g, cfg)
    if cfg.sides is None:
        raise InvalidInstanceError(["check requires a full side assignment"])
    chi, per_cluster, violations = count_local_crossings(g, cfg)
    segments = edge_segments(g, cfg)
    return Drawing(
        edge_sides={e.id: tuple(cfg.sides[e.id]) for e in g.inter_edges},
        edge_segments={e: (tuple(s.a), tuple(s.b)) for e, s in segments.items()},
        chi_per_cluster=per_cluster,
        chi=chi,
        locally_planar=chi == 0 and not violations,
        unsatisfied_clauses=0,
        matrix_violations=violations,
    )


# ---------------------------------------------------------------------------
# Editor heuristic: one no-sweep formula, MAX-2-SAT fallback
# ---------------------------------------------------------------------------


def editor_heuristic(
    g: FlatClusteredGraph,
    cfg: LayoutConfig,
    seed: int = 0,
    exact_maxsat_limit: int = 20,
    heuristic_budget: int | None = None,
) -> Drawing:
    """Interactive-path solver: sweep drawings are excluded, so the whole
    instance reduces to one 2-SAT formula; when it is unsatisfiable the
    MAX-2-SAT optimum (exact up to ``exact_maxsat_limit`` variables, seeded
    local search beyond) picks the side assignment. Pipe violations do not
    abort: the editor must always render something while the user drags.
    """
    _check_valid(g, _order_free_config(cfg))
    eng = _Engine(g, cfg)
    if not g.inter_edges:
        return decode_assignment(EdgeVariableMap({}), [], g, cfg)

    choices: dict[str, list[int]] = {}
    for key in sorted(eng.contexts):
        choices.update(eng.case2_choices(key))
    edge_pairs = eng.edge_pair_lists(eng.contexts.keys())
    formula, var_of, forced = eng.assemble(choices, edge_pairs)

    # the pair analysis bounds the formula: at most 4 clauses per
    # (edge pair, shared cluster) incidence plus one unit per edge
    budget = 4 * sum(w for _, _, w in edge_pairs) + len(g.inter_edges)
    assert len(formula.clauses) + forced <= budget

    assignment = solve_2sat(formula)
    violated = forced
    if assignment is None:
        if formula.variable_count <= exact_maxsat_limit:
            assignment, bad = max_sat_exact(formula, exact_maxsat_limit)
        else:
            if heuristic_budget is None:
                # interactive latency cap: shrink the search on big instances
                n = formula.variable_count
                heuristic_budget = 200 * n if n <= 48 else 12 * n
            assignment, bad = max_sat_heuristic(
                formula, seed=seed, budget=heuristic_budget
            )
        violated += bad
    vmap = eng.variable_map(choices, var_of)
    return decode_assignment(vmap, assignment, g, cfg, unsatisfied=violated)
