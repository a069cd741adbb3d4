import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodetrix.sat import (
    TwoSatFormula,
    from_dimacs,
    max_sat_exact,
    max_sat_heuristic,
    solve_2sat,
    to_dimacs,
    violated_clauses,
    violation_count,
)


def F(n, clauses):
    f = TwoSatFormula(n)
    for a, b in clauses:
        f.add_clause(a, b)
    return f


def _enumerate_min(f: TwoSatFormula) -> int:
    best = len(f.clauses) + 1
    for bits in itertools.product([False, True], repeat=f.variable_count):
        best = min(best, violation_count(f, list(bits)))
    return best


def _random_formula(rng: random.Random, n: int, m: int) -> TwoSatFormula:
    f = TwoSatFormula(n)
    for _ in range(m):
        a = (rng.randrange(n), rng.random() < 0.5)
        b = (rng.randrange(n), rng.random() < 0.5)
        f.add_clause(a, b)
    return f


# ---------------------------------------------------------------------------
# solve_2sat
# ---------------------------------------------------------------------------


def test_sat_example_forcing_both_true():
    f = F(2, [(((0, True)), ((1, True))), (((0, False)), ((1, True))), (((0, True)), ((1, False)))])
    assert solve_2sat(f) == [True, True]


def test_unsat_square_of_clauses():
    f = F(
        2,
        [
            ((0, True), (1, True)),
            ((0, False), (1, True)),
            ((0, True), (1, False)),
            ((0, False), (1, False)),
        ],
    )
    assert solve_2sat(f) is None


def test_contradictory_units_unsat():
    f = TwoSatFormula(1)
    f.add_unit((0, True))
    f.add_unit((0, False))
    assert solve_2sat(f) is None


def test_trivially_false_is_unsat():
    assert solve_2sat(TwoSatFormula(0, trivially_false=True)) is None


def test_empty_formula_is_sat():
    assert solve_2sat(TwoSatFormula(0)) == []


def test_solver_agrees_with_enumeration_on_many_formulas():
    rng = random.Random(42)
    for _ in range(200):
        n = rng.randint(1, 9)
        f = _random_formula(rng, n, rng.randint(0, 3 * n))
        result = solve_2sat(f)
        exists = _enumerate_min(f) == 0
        assert (result is not None) == exists
        if result is not None:
            assert violation_count(f, result) == 0


@given(st.data())
@settings(max_examples=150, deadline=None)
def test_solver_agreement_property(data):
    n = data.draw(st.integers(1, 8))
    m = data.draw(st.integers(0, 20))
    clauses = data.draw(
        st.lists(
            st.tuples(
                st.tuples(st.integers(0, n - 1), st.booleans()),
                st.tuples(st.integers(0, n - 1), st.booleans()),
            ),
            min_size=m,
            max_size=m,
        )
    )
    f = F(n, clauses)
    result = solve_2sat(f)
    assert (result is not None) == (_enumerate_min(f) == 0)


# ---------------------------------------------------------------------------
# violated clauses
# ---------------------------------------------------------------------------


def test_violated_clauses_listing():
    f = F(2, [((0, True), (1, True))])
    assert violated_clauses(f, [True, True]) == []
    assert violated_clauses(f, [False, False]) == [0]


def test_trivially_false_marker():
    f = TwoSatFormula(0, trivially_false=True)
    assert violated_clauses(f, []) == [-1]


# ---------------------------------------------------------------------------
# MAX-2-SAT
# ---------------------------------------------------------------------------


def test_max_sat_exact_on_unsat_square():
    f = F(
        2,
        [
            ((0, True), (1, True)),
            ((0, False), (1, True)),
            ((0, True), (1, False)),
            ((0, False), (1, False)),
        ],
    )
    assignment, violated = max_sat_exact(f)
    assert violated == 1
    assert violation_count(f, assignment) == 1


def test_max_sat_exact_on_satisfiable_formula():
    f = F(2, [((0, True), (1, False))])
    _, violated = max_sat_exact(f)
    assert violated == 0


def test_max_sat_exact_unit_majority():
    f = TwoSatFormula(1)
    f.add_unit((0, True))
    f.add_unit((0, False))
    f.add_unit((0, True))
    assignment, violated = max_sat_exact(f)
    assert assignment == [True]
    assert violated == 1


def test_max_sat_exact_respects_variable_limit():
    with pytest.raises(ValueError):
        max_sat_exact(TwoSatFormula(30), variable_limit=20)


def test_max_sat_exact_equals_enumeration():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 8)
        f = _random_formula(rng, n, rng.randint(1, 3 * n))
        _, violated = max_sat_exact(f)
        assert violated == _enumerate_min(f)


def test_heuristic_confirms_satisfiable_certificates():
    f = F(2, [((0, True), (1, False))])
    _, violated = max_sat_heuristic(f, seed=0)
    assert violated == 0


def test_heuristic_reaches_small_optimum():
    f = F(
        2,
        [
            ((0, True), (1, True)),
            ((0, False), (1, True)),
            ((0, True), (1, False)),
            ((0, False), (1, False)),
        ],
    )
    for seed in range(5):
        _, violated = max_sat_heuristic(f, seed=seed)
        assert violated == 1


def test_heuristic_never_undercuts_exact():
    rng = random.Random(99)
    for _ in range(40):
        n = rng.randint(2, 10)
        f = _random_formula(rng, n, rng.randint(2, 4 * n))
        _, exact = max_sat_exact(f)
        _, approx = max_sat_heuristic(f, seed=1)
        assert approx >= exact


def test_heuristic_deterministic_for_fixed_seed():
    rng = random.Random(5)
    f = _random_formula(rng, 50, 180)
    first = max_sat_heuristic(f, seed=11)
    second = max_sat_heuristic(f, seed=11)
    assert first == second


def test_solve_matches_maxsat_zero():
    rng = random.Random(3)
    for _ in range(80):
        n = rng.randint(1, 9)
        f = _random_formula(rng, n, rng.randint(0, 3 * n))
        _, violated = max_sat_exact(f)
        assert (solve_2sat(f) is not None) == (violated == 0)


# ---------------------------------------------------------------------------
# DIMACS
# ---------------------------------------------------------------------------


def test_dimacs_round_trip():
    f = F(3, [((0, True), (2, False)), ((1, False), (1, False))])
    g = from_dimacs(to_dimacs(f))
    assert g.variable_count == f.variable_count
    assert g.clauses == f.clauses


def test_dimacs_rejects_wide_clauses():
    with pytest.raises(ValueError):
        from_dimacs("p cnf 3 1\n1 2 3 0\n")
