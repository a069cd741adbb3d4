import pytest

from nodetrix.fixtures import brute_force_oracle, random_instance
from nodetrix.layout import (
    EdgeVariableEntry,
    EdgeVariableMap,
    InvalidInstanceError,
    PairGuess,
    PipeViolationError,
    build_pair_formula,
    build_triplet_clauses,
    check_fixed_order_and_side,
    decode_assignment,
    editor_heuristic,
    solve_exact_fixed_order,
)
from nodetrix.model import (
    FlatClusteredGraph,
    InterEdge,
    LayoutConfig,
    Square,
)
from nodetrix.sat import solve_2sat

from conftest import two_cluster_instance


# ---------------------------------------------------------------------------
# pair formulas
# ---------------------------------------------------------------------------


def test_single_edge_pair_formula_is_free():
    g, cfg = two_cluster_instance(edges=(("a1", "b1"),))
    formula, vmap = build_pair_formula(g, cfg, ("A", "B"))
    assert formula.variable_count == 1
    assert formula.clauses == []
    assert not formula.trivially_false
    assert vmap.entries["e0"].kind == "binary"


def test_alternating_pair_case2_candidates_and_satisfiable():
    # A1 geometry, orders alternating: candidates per edge are the two
    # non-sweep pairs R/T and B/L, and a planar combination exists
    g, cfg = two_cluster_instance(
        square_b=Square(6, -6, 2),
        edges=(("a1", "b2"), ("a2", "b1")),
        order_a=("a1", "a2"),
        order_b=("b1", "b2"),
    )
    cfg.squares["A"] = Square(0, 0, 2)
    formula, vmap = build_pair_formula(g, cfg, ("A", "B"))
    for eid in ("e0", "e1"):
        assert set(vmap.entries[eid].options) == {("R", "T"), ("B", "L")}
    assert solve_2sat(formula) is not None


def test_pinned_sweep_empty_candidates_trivially_false():
    # sigma_a(e*) < sigma_a(e) and sigma_b(e) < sigma_b(e*): every monotone
    # drawing of e crosses the pinned sweep
    g, cfg = two_cluster_instance(
        square_b=Square(8, -8, 4),
        edges=(("a2", "b2"), ("a3", "b1")),
    )
    formula, _ = build_pair_formula(
        g, cfg, ("A", "B"), PairGuess(("A", "B"), ("e0", ("R", "L")))
    )
    assert formula.trivially_false


def test_pinned_sweep_non_crossing_rows_give_two_candidates():
    g, cfg = two_cluster_instance(
        square_b=Square(8, -8, 4),
        edges=(("a2", "b2"), ("a1", "b1")),
    )
    formula, vmap = build_pair_formula(
        g, cfg, ("A", "B"), PairGuess(("A", "B"), ("e0", ("R", "L")))
    )
    assert vmap.entries["e0"].kind == "fixed"
    assert vmap.entries["e1"].kind == "binary"
    assert set(vmap.entries["e1"].options) == {("R", "T"), ("R", "L")}


def test_pinned_sweep_adjacent_edge_may_branch():
    # e1 shares endpoint a2 with the pinned edge: the tables don't apply;
    # the geometric filter may leave more than two candidates
    g, cfg = two_cluster_instance(
        square_b=Square(8, -8, 4),
        edges=(("a2", "b2"), ("a2", "b1")),
    )
    _, vmap = build_pair_formula(
        g, cfg, ("A", "B"), PairGuess(("A", "B"), ("e0", ("R", "L")))
    )
    assert vmap.entries["e1"].kind in ("binary", "branch")
    if vmap.entries["e1"].kind == "branch":
        assert len(vmap.entries["e1"].options) > 2


def test_bad_guess_rejected():
    g, cfg = two_cluster_instance(edges=(("a1", "b1"),))
    with pytest.raises(ValueError):
        build_pair_formula(
            g, cfg, ("A", "B"), PairGuess(("A", "B"), ("e0", ("R", "T")))
        )


# ---------------------------------------------------------------------------
# triplet clauses
# ---------------------------------------------------------------------------


def _triangle_instance():
    g = FlatClusteredGraph(
        clusters={"A": ["a1", "a2"], "B": ["b1"], "C": ["c1"]},
        inter_edges=[InterEdge("ab", "a1", "b1"), InterEdge("ac", "a2", "c1")],
    )
    cfg = LayoutConfig(
        squares={"A": Square(0, 0, 4), "B": Square(8, 0, 4), "C": Square(0, 8, 4)},
        orders={"A": ["a1", "a2"], "B": ["b1"], "C": ["c1"]},
    )
    return g, cfg


def test_triplet_opposite_sides_no_clauses():
    g, cfg = _triangle_instance()
    blocked = build_triplet_clauses(
        g,
        cfg,
        "A",
        "B",
        "C",
        {"ab": [("R", "L")], "ac": [("T", "B")]},
    )
    assert blocked == []


def test_triplet_crossing_combo_blocked():
    # both edges leave A's top-right corner region; some side combinations
    # cross there and get blocked, others stay free
    g = FlatClusteredGraph(
        clusters={"A": ["a1", "a2"], "B": ["b1"], "C": ["c1"]},
        inter_edges=[InterEdge("ab", "a1", "b1"), InterEdge("ac", "a2", "c1")],
    )
    cfg = LayoutConfig(
        squares={"A": Square(0, 0, 4), "B": Square(8, 2, 2), "C": Square(8, 6, 2)},
        orders={"A": ["a1", "a2"], "B": ["b1"], "C": ["c1"]},
    )
    _, vmap_ab = build_pair_formula(g, cfg, ("A", "B"))
    _, vmap_ac = build_pair_formula(g, cfg, ("A", "C"))
    options = {
        "ab": list(vmap_ab.entries["ab"].options),
        "ac": list(vmap_ac.entries["ac"].options),
    }
    blocked = build_triplet_clauses(g, cfg, "A", "B", "C", options)
    total = len(options["ab"]) * len(options["ac"])
    assert blocked
    assert len(blocked) < total


# ---------------------------------------------------------------------------
# exact solver
# ---------------------------------------------------------------------------


def test_exact_solver_on_aligned_pair():
    g, cfg = two_cluster_instance(
        square_b=Square(6, -6, 2),
        edges=(("a1", "b1"), ("a2", "b2")),
        order_a=("a1", "a2"),
        order_b=("b1", "b2"),
    )
    cfg.squares["A"] = Square(0, 0, 2)
    drawing = solve_exact_fixed_order(g, cfg)
    assert drawing is not None
    assert drawing.chi == 0
    assert drawing.locally_planar


def test_exact_solver_infeasible_case():
    # side-by-side squares (A3 both ways) with alternating orders: the only
    # feasible pair per edge is R/L and they must cross
    g, cfg = two_cluster_instance(
        square_b=Square(8, 0, 4),
        edges=(("a1", "b2"), ("a2", "b1")),
    )
    assert solve_exact_fixed_order(g, cfg) is None


def test_exact_solver_no_edges():
    g, cfg = two_cluster_instance(edges=())
    drawing = solve_exact_fixed_order(g, cfg)
    assert drawing is not None
    assert drawing.chi == 0 and drawing.edge_sides == {}


def test_exact_solver_requires_valid_pipes():
    g = FlatClusteredGraph(
        clusters={"L": ["l"], "M": ["m"], "R": ["r"]},
        inter_edges=[InterEdge("e", "l", "r")],
    )
    cfg = LayoutConfig(
        squares={"L": Square(0, 0, 2), "M": Square(4, 0, 2), "R": Square(8, 0, 2)},
        orders={"L": ["l"], "M": ["m"], "R": ["r"]},
    )
    with pytest.raises(PipeViolationError):
        solve_exact_fixed_order(g, cfg)


def test_exact_solver_rejects_malformed_instances():
    g, cfg = two_cluster_instance()
    cfg.orders["A"] = ["a1"]
    with pytest.raises(InvalidInstanceError):
        solve_exact_fixed_order(g, cfg)


def test_exact_matches_oracle_on_small_batch():
    for seed in range(40, 80):
        g, cfg = random_instance(2 + seed % 2, 3, 3 + seed % 4, seed)
        min_chi, _ = brute_force_oracle(g, cfg)
        drawing = solve_exact_fixed_order(g, cfg)
        assert (drawing is not None) == (min_chi == 0), seed
        if drawing is not None:
            assert drawing.chi == 0


def test_exact_matches_oracle_on_wider_instances():
    for seed in range(200, 215):
        g, cfg = random_instance(4, 3, 8, seed)
        min_chi, _ = brute_force_oracle(g, cfg)
        drawing = solve_exact_fixed_order(g, cfg)
        assert (drawing is not None) == (min_chi == 0), seed


def test_exact_solver_deterministic():
    g, cfg = random_instance(3, 3, 6, 77)
    first = solve_exact_fixed_order(g, cfg)
    second = solve_exact_fixed_order(g, cfg)
    assert first is not None and second is not None
    assert first.edge_sides == second.edge_sides
    assert first.edge_segments == second.edge_segments


def test_exact_verdict_invariant_under_edge_id_permutation():
    g, cfg = random_instance(3, 3, 6, 123)
    base = solve_exact_fixed_order(g, cfg) is not None
    renamed = {
        e.id: f"z{len(g.inter_edges) - k:02d}"
        for k, e in enumerate(sorted(g.inter_edges, key=lambda e: e.id))
    }
    g2 = FlatClusteredGraph(
        clusters=g.clusters,
        inter_edges=[InterEdge(renamed[e.id], e.u, e.v) for e in g.inter_edges],
    )
    assert (solve_exact_fixed_order(g2, cfg) is not None) == base


def test_exact_solver_uses_sweep_guess_when_needed():
    # two nested A2 edges where the no-sweep candidate sets are both {R/L}
    # and cross; only the pinned sweep guess rescues the instance
    g, cfg = two_cluster_instance(
        square_b=Square(8, -2, 4),
        edges=(("a2", "b3"), ("a3", "b2")),
    )
    min_chi, _ = brute_force_oracle(g, cfg)
    no_sweep_chi, _ = brute_force_oracle(g, cfg, restrict_no_sweep=True)
    drawing = solve_exact_fixed_order(g, cfg)
    assert (drawing is not None) == (min_chi == 0)
    if min_chi == 0 and no_sweep_chi > 0:
        heur = editor_heuristic(g, cfg)
        assert heur.chi > 0  # the no-sweep restriction trades accuracy


# ---------------------------------------------------------------------------
# checker
# ---------------------------------------------------------------------------


def test_check_single_edge_rl():
    g, cfg = two_cluster_instance(edges=(("a1", "b1"),))
    cfg.sides = {"e0": ("R", "L")}
    drawing = check_fixed_order_and_side(g, cfg)
    assert drawing.locally_planar


def test_check_infeasible_side_pair_flagged():
    # B/T in an A2 overlap: the straight segment cannot avoid the squares
    g, cfg = two_cluster_instance(square_b=Square(8, -2, 4), edges=(("a1", "b1"),))
    cfg.sides = {"e0": ("B", "T")}
    drawing = check_fixed_order_and_side(g, cfg)
    assert not drawing.locally_planar
    assert drawing.matrix_violations == ["e0"]


def test_check_forced_crossing_counts_twice():
    g, cfg = two_cluster_instance(
        square_b=Square(8, 0, 4), edges=(("a1", "b2"), ("a2", "b1"))
    )
    cfg.sides = {"e0": ("R", "L"), "e1": ("R", "L")}
    drawing = check_fixed_order_and_side(g, cfg)
    assert not drawing.locally_planar
    assert drawing.chi == 2


def test_check_requires_sides():
    g, cfg = two_cluster_instance()
    with pytest.raises(InvalidInstanceError):
        check_fixed_order_and_side(g, cfg)


# ---------------------------------------------------------------------------
# decode
# ---------------------------------------------------------------------------


def test_decode_all_true_takes_canonical_pairs():
    g, cfg = two_cluster_instance(edges=(("a1", "b1"), ("a2", "b2")))
    formula, vmap = build_pair_formula(g, cfg, ("A", "B"))
    n = vmap.variable_count()
    drawing = decode_assignment(vmap, [True] * n, g, cfg)
    for eid, entry in vmap.entries.items():
        assert drawing.edge_sides[eid] == entry.options[0]


def test_decode_fixed_only_ignores_assignment():
    g, cfg = two_cluster_instance(square_b=Square(8, 0, 4), edges=(("a1", "b1"),))
    vmap = EdgeVariableMap(
        {"e0": EdgeVariableEntry("fixed", None, (("R", "L"),))}
    )
    d1 = decode_assignment(vmap, [], g, cfg)
    assert d1.edge_sides == {"e0": ("R", "L")}


def test_decode_branch_is_an_error():
    g, cfg = two_cluster_instance(edges=(("a1", "b1"),))
    vmap = EdgeVariableMap(
        {"e0": EdgeVariableEntry("branch", None, (("R", "L"), ("R", "T"), ("B", "L")))}
    )
    with pytest.raises(ValueError):
        decode_assignment(vmap, [], g, cfg)


# ---------------------------------------------------------------------------
# heuristic
# ---------------------------------------------------------------------------


def test_heuristic_zero_when_formula_satisfiable():
    g, cfg = two_cluster_instance(
        square_b=Square(6, -6, 2),
        edges=(("a1", "b2"), ("a2", "b1")),
        order_a=("a1", "a2"),
        order_b=("b1", "b2"),
    )
    cfg.squares["A"] = Square(0, 0, 2)
    drawing = editor_heuristic(g, cfg)
    assert drawing.chi == 0
    assert drawing.unsatisfied_clauses == 0


def test_heuristic_reports_forced_crossing():
    g, cfg = two_cluster_instance(
        square_b=Square(8, 0, 4), edges=(("a1", "b2"), ("a2", "b1"))
    )
    drawing = editor_heuristic(g, cfg)
    assert drawing.chi == 2
    assert drawing.unsatisfied_clauses == 2  # one crossing, two shared clusters


def test_heuristic_chi_equals_unsatisfied_count():
    for seed in range(20):
        g, cfg = random_instance(3, 3, 6, seed)
        drawing = editor_heuristic(g, cfg, seed=seed)
        assert drawing.chi == drawing.unsatisfied_clauses


def test_heuristic_matches_no_sweep_oracle_on_exact_path():
    for seed in range(30):
        g, cfg = random_instance(2 + seed % 2, 3, 4, seed)
        min_chi, _ = brute_force_oracle(g, cfg, restrict_no_sweep=True)
        drawing = editor_heuristic(g, cfg, seed=0)
        assert drawing.chi == min_chi, seed


def test_heuristic_unavoidable_single_cluster_crossing():
    # two edges sharing only cluster A, every candidate combination
    # crossing: the minimum is one local crossing and the heuristic hits it
    g = FlatClusteredGraph(
        clusters={"A": ["a1", "a2"], "B": ["b1"], "C": ["c1"]},
        inter_edges=[InterEdge("ab", "a2", "b1"), InterEdge("ac", "a1", "c1")],
    )
    cfg = LayoutConfig(
        squares={"A": Square(0, 0, 4), "B": Square(10, 2, 2), "C": Square(9, -1, 2)},
        orders={"A": ["a1", "a2"], "B": ["b1"], "C": ["c1"]},
    )
    min_chi, _ = brute_force_oracle(g, cfg)
    assert min_chi == 1
    drawing = editor_heuristic(g, cfg)
    assert drawing.chi == 1
    assert drawing.unsatisfied_clauses == 1
    assert solve_exact_fixed_order(g, cfg) is None


def test_heuristic_deterministic():
    g, cfg = random_instance(4, 3, 10, 5)
    first = editor_heuristic(g, cfg, seed=9)
    second = editor_heuristic(g, cfg, seed=9)
    assert first.edge_sides == second.edge_sides
    assert first.chi == second.chi


def test_engine_candidates_match_direct_geometry_in_all_orientations():
    """Frame round trip: the engine's world side pairs (computed through
    the canonical frame) coincide with a direct avoid-both-squares filter,
    for every orientation of the square pair."""
    import random as _random

    from nodetrix import feasibility as fz
    from nodetrix.geometry import Segment, anchor_point, segment_avoids_square
    from nodetrix.layout import _Engine
    from nodetrix.model import SIDES

    rng = _random.Random(8)
    matrices = [
        (1, 0, 0, 1), (-1, 0, 0, 1), (1, 0, 0, -1), (-1, 0, 0, -1),
        (0, 1, 1, 0), (0, -1, 1, 0), (0, 1, -1, 0), (0, -1, -1, 0),
    ]
    for matrix in matrices:
        for _ in range(6):
            frame = fz.CanonicalFrame(matrix=matrix, first_is_a=True)
            base_a = Square(0, 0, 4)
            base_b = Square(rng.randint(6, 10), rng.randint(-9, 9), rng.choice([2, 4]))

            def img(sq):
                corners = [frame.map_point(c) for c in sq.corners()]
                xs = sorted(c[0] for c in corners)
                ys = sorted(c[1] for c in corners)
                return Square(xs[0], ys[0], xs[-1] - xs[0])

            qa, qb = img(base_a), img(base_b)
            g = FlatClusteredGraph(
                clusters={"A": ["a1", "a2", "a3"], "B": ["b1", "b2", "b3"]},
                inter_edges=[InterEdge("e", "a2", "b1")],
            )
            cfg = LayoutConfig(
                squares={"A": qa, "B": qb},
                orders={"A": ["a1", "a2", "a3"], "B": ["b1", "b2", "b3"]},
            )
            eng = _Engine(g, cfg)
            got = sorted(
                plan.world_pair(i)
                for plan in [eng.plans["e"]]
                for i in range(len(plan.cands))
            )
            direct = []
            for su in SIDES:
                pu = anchor_point(qa, 2, 3, su)
                for sv in SIDES:
                    pv = anchor_point(qb, 1, 3, sv)
                    seg = Segment(pu, pv)
                    if segment_avoids_square(seg, qa) and segment_avoids_square(seg, qb):
                        direct.append((su, sv))
            assert got == sorted(direct), (matrix, qa, qb)


def test_pinned_candidates_never_cross_the_pinned_edge():
    """Randomized geometries: every candidate that survives the pin filter
    stays crossing-free against the pinned sweep segment."""
    import random as _random

    from nodetrix.geometry import segments_cross
    from nodetrix.layout import _Engine

    rng = _random.Random(17)
    found = 0
    while found < 40:
        qb = Square(rng.randint(6, 9), rng.randint(-9, 0), 4)
        g, cfg = two_cluster_instance(
            square_b=qb,
            edges=(("a2", "b2"), (f"a{rng.choice([1, 3, 4])}", f"b{rng.choice([1, 3, 4])}")),
        )
        eng = _Engine(g, cfg)
        plan_star = eng.plans["e0"]
        sweeps = [i for i, c in enumerate(plan_star.cands) if c.s_drawn]
        for star_index in sweeps:
            choices = eng.case1_choices(("A", "B"), "e0", star_index)
            if choices is None:
                continue
            star_seg = plan_star.cands[star_index].seg
            for i in choices["e1"]:
                assert not segments_cross(eng.plans["e1"].cands[i].seg, star_seg)
            found += 1


def test_solver_drawings_survive_independent_recount():
    from conftest import naive_recount

    for seed in (3, 14, 15):
        g, cfg = random_instance(3, 3, 6, seed)
        drawing = editor_heuristic(g, cfg, seed=seed)
        full = LayoutConfig(cfg.squares, cfg.orders, drawing.edge_sides)
        chi, per_cluster = naive_recount(g, full)
        assert drawing.chi == chi
        assert drawing.chi_per_cluster == per_cluster


def test_heuristic_survives_pipe_violations():
    # middle square inside the L-R pipe: warning territory, still drawable
    g = FlatClusteredGraph(
        clusters={"L": ["l"], "M": ["m"], "R": ["r"]},
        inter_edges=[InterEdge("e", "l", "r")],
    )
    cfg = LayoutConfig(
        squares={"L": Square(0, 0, 2), "M": Square(4, 0, 2), "R": Square(8, 0, 2)},
        orders={"L": ["l"], "M": ["m"], "R": ["r"]},
    )
    drawing = editor_heuristic(g, cfg)
    assert drawing.edge_sides["e"] == ("R", "L")
