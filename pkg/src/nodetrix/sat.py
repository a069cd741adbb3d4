"""2-SAT satisfiability and MAX-2-SAT optimization.

Literals are (variable index, polarity) pairs with 0-based variables.
A unit constraint is encoded as a clause repeating its literal, so every
clause has exactly two literal slots. ``trivially_false`` stands in for an
empty clause: such a formula is unsatisfiable and always counts at least
one violation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

Literal = tuple[int, bool]
Clause = tuple[Literal, Literal]


@dataclass
class TwoSatFormula:
    variable_count: int
    clauses: list[Clause] = field(default_factory=list)
    trivially_false: bool = False

    def add_clause(self, a: Literal, b: Literal) -> None:
        self.clauses.append((a, b))

    def add_unit(self, a: Literal) -> None:
        self.clauses.append((a, a))


def _lit_node(lit: Literal) -> int:
    var, positive = lit
    return 2 * var + (0 if positive else 1)


def _neg_node(node: int) -> int:
    return node ^ 1


# ---------------------------------------------------------------------------
# Exact 2-SAT decision
# ---------------------------------------------------------------------------


def solve_2sat(f: TwoSatFormula) -> list[bool] | None:
    """Satisfying assignment via the implication graph, or None if UNSAT.

    Iterative Tarjan SCC over the 2n literal nodes; a variable is true iff
    its positive literal's component closes before its negative one's.
    Linear in the number of clauses and fully deterministic.
    """
    if f.trivially_false:
        return None
    n = f.variable_count
    size = 2 * n
    adj: list[list[int]] = [[] for _ in range(size)]
    for a, b in f.clauses:
        adj[_neg_node(_lit_node(a))].append(_lit_node(b))
        adj[_neg_node(_lit_node(b))].append(_lit_node(a))

    comp = [-1] * size
    low = [0] * size
    num = [-1] * size
    stack: list[int] = []
    on_stack = [False] * size
    counter = 0
    comp_count = 0

    for root in range(size):
        if num[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            node, ptr = work[-1]
            if ptr == 0:
                num[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack[node] = True
            if ptr < len(adj[node]):
                work[-1] = (node, ptr + 1)
                nxt = adj[node][ptr]
                if num[nxt] == -1:
                    work.append((nxt, 0))
                elif on_stack[nxt]:
                    low[node] = min(low[node], num[nxt])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[node])
                if low[node] == num[node]:
                    while True:
                        top = stack.pop()
                        on_stack[top] = False
                        comp[top] = comp_count
                        if top == node:
                            break
                    comp_count += 1

    values: list[bool] = []
    for v in range(n):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        values.append(comp[2 * v] < comp[2 * v + 1])
    return values


def violated_clauses(f: TwoSatFormula, assignment: list[bool]) -> list[int]:
    """Indices of falsified clauses, in clause order; -1 flags trivial falsity."""
    if len(assignment) != f.variable_count:
        raise ValueError("assignment length does not match variable count")
    out: list[int] = [-1] if f.trivially_false else []
    for i, (a, b) in enumerate(f.clauses):
        if assignment[a[0]] != a[1] and assignment[b[0]] != b[1]:
            out.append(i)
    return out


def violation_count(f: TwoSatFormula, assignment: list[bool]) -> int:
    return len(violated_clauses(f, assignment))


# ---------------------------------------------------------------------------
# MAX-2-SAT
# ---------------------------------------------------------------------------


def max_sat_exact(
    f: TwoSatFormula, variable_limit: int = 20
) -> tuple[list[bool], int]:
    """Assignment minimizing the number of violated clauses, by branch and bound.

    Deterministic: variables are branched in index order, True first, and
    only strict improvements replace the incumbent. Instances beyond
    ``variable_limit`` variables are refused; use the heuristic instead.
    """
    n = f.variable_count
    if n > variable_limit:
        raise ValueError(
            f"{n} variables exceed the exact limit {variable_limit}; "
            "use max_sat_heuristic"
        )
    base = 1 if f.trivially_false else 0
    occurrences: list[list[int]] = [[] for _ in range(n)]
    for ci, clause in enumerate(f.clauses):
        for var in {clause[0][0], clause[1][0]}:
            occurrences[var].append(ci)

    false_lits = [0] * len(f.clauses)  # falsified literal slots per clause
    assignment = [False] * n
    best = [None, len(f.clauses) + 1]  # incumbent assignment, violation count

    def falsified_delta(var: int, value: bool) -> list[int]:
        newly: list[int] = []
        for ci in occurrences[var]:
            a, b = f.clauses[ci]
            add = (1 if (a[0] == var and a[1] != value) else 0) + (
                1 if (b[0] == var and b[1] != value) else 0
            )
            if add:
                false_lits[ci] += add
                if false_lits[ci] == 2:
                    newly.append(ci)
        return newly

    def undo(var: int, value: bool) -> None:
        for ci in occurrences[var]:
            a, b = f.clauses[ci]
            sub = (1 if (a[0] == var and a[1] != value) else 0) + (
                1 if (b[0] == var and b[1] != value) else 0
            )
            false_lits[ci] -= sub

    def search(var: int, violated: int) -> None:
        if violated >= best[1]:
            return
        if var == n:
            best[0] = assignment.copy()
            best[1] = violated
            return
        for value in (True, False):
            assignment[var] = value
            newly = falsified_delta(var, value)
            search(var + 1, violated + len(newly))
            undo(var, value)

    search(0, 0)
    return best[0] if best[0] is not None else [], best[1] + base


def max_sat_heuristic(
    f: TwoSatFormula,
    seed: int = 0,
    budget: int | None = None,
    restarts: int = 20,
) -> tuple[list[bool], int]:
    """Greedy best-improvement local search with restarts (GSAT style).

    A satisfiability check runs first, so satisfiable formulas always come
    back with zero violations. ``budget`` caps the total number of flips
    (default 10n per restart across ``restarts`` restarts); consecutive
    sideways moves are capped before forcing a restart. Deterministic for
    a given (formula, seed, budget).
    """
    n = f.variable_count
    base = 1 if f.trivially_false else 0
    exact = solve_2sat(f)
    if exact is not None:
        return exact, base
    if n == 0:
        return [], len(f.clauses) + base

    if budget is None:
        budget = restarts * 10 * n
    flips_per_restart = max(1, 10 * n)
    sideways_cap = max(8, n)
    rng = random.Random(seed)

    clauses = f.clauses
    occ: list[list[int]] = [[] for _ in range(n)]
    for ci, (a, b) in enumerate(clauses):
        occ[a[0]].append(ci)
        if b[0] != a[0]:
            occ[b[0]].append(ci)
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for a, b in clauses:
        neighbors[a[0]].add(b[0])
        neighbors[b[0]].add(a[0])

    best_assignment: list[bool] | None = None
    best_violated = len(clauses) + 1
    flips_used = 0

    def gain_of(values: list[bool], true_lits: list[int], w: int) -> int:
        # exact violated-count change of flipping w (handles repeated literals)
        g = 0
        for ci in occ[w]:
            a, b = clauses[ci]
            after = true_lits[ci]
            if a[0] == w:
                after += -1 if values[w] == a[1] else 1
            if b[0] == w:
                after += -1 if values[w] == b[1] else 1
            g += (1 if true_lits[ci] == 0 else 0) - (1 if after == 0 else 0)
        return g

    while flips_used < budget:
        values = [rng.random() < 0.5 for _ in range(n)]
        true_lits = [
            (values[a[0]] == a[1]) + (values[b[0]] == b[1]) for a, b in clauses
        ]
        violated = sum(1 for t in true_lits if t == 0)
        gain = [gain_of(values, true_lits, v) for v in range(n)]

        if violated < best_violated:
            best_violated = violated
            best_assignment = values.copy()

        sideways = 0
        for _ in range(flips_per_restart):
            if flips_used >= budget or violated == 0:
                break
            flips_used += 1
            v = max(range(n), key=lambda i: (gain[i], -i))
            if gain[v] < 0:
                break  # strict local minimum: restart
            if gain[v] == 0:
                sideways += 1
                if sideways > sideways_cap:
                    break
            else:
                sideways = 0

            values[v] = not values[v]
            violated -= gain[v]
            for ci in occ[v]:
                a, b = clauses[ci]
                true_lits[ci] = (values[a[0]] == a[1]) + (values[b[0]] == b[1])
            gain[v] = gain_of(values, true_lits, v)
            for w in neighbors[v]:
                if w != v:
                    gain[w] = gain_of(values, true_lits, w)

            if violated < best_violated:
                best_violated = violated
                best_assignment = values.copy()
        if best_violated == 0:
            break

    assert best_assignment is not None
    return best_assignment, best_violated + base


# ---------------------------------------------------------------------------
# DIMACS-style debugging I/O
# ---------------------------------------------------------------------------


def to_dimacs(f: TwoSatFormula) -> str:
    lines = [f"p cnf {f.variable_count} {len(f.clauses)}"]
    for a, b in f.clauses:
        la = (a[0] + 1) * (1 if a[1] else -1)
        lb = (b[0] + 1) * (1 if b[1] else -1)
        lines.append(f"{la} {lb} 0")
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> TwoSatFormula:
    formula: TwoSatFormula | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            formula = TwoSatFormula(int(parts[2]))
            continue
        if formula is None:
            raise ValueError("clause before DIMACS header")
        nums = [int(tok) for tok in line.split() if tok != "0"]
        if len(nums) == 1:
            nums = nums * 2
        if len(nums) != 2:
            raise ValueError(f"not a 2-SAT clause: {line!r}")
        formula.add_clause(
            (abs(nums[0]) - 1, nums[0] > 0), (abs(nums[1]) - 1, nums[1] > 0)
        )
    if formula is None:
        raise ValueError("missing DIMACS header")
    return formula
