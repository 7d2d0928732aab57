"""Solver unit tests: exactness, determinism, validation, text dump."""

import random

import numpy as np
import pytest

from carelift.ilp import (
    EQ,
    GE,
    LE,
    IllFormedProgramError,
    IntegerProgram,
    LinearConstraint,
    ResourceLimitError,
    SearchSpaceLimitError,
    Solution,
    Variable,
    brute_force_solve,
    solve,
    to_lp_text,
    validate_solution,
)
from carelift.ilp.simplex import solve_lp


def ip_of(variables, constraints, objective, sense="maximize"):
    return IntegerProgram(tuple(variables), tuple(constraints), objective, sense)


SATURATE = ip_of(
    [Variable("x1", upper=10), Variable("x2", upper=10)],
    [
        LinearConstraint("cap", {"x1": 1, "x2": 1}, LE, 3),
        LinearConstraint("x1cap", {"x1": 1}, LE, 2),
    ],
    {"x1": 1, "x2": 1},
)

BOUND_TIGHT = ip_of(
    [Variable("x", upper=100)],
    [LinearConstraint("floor", {"x": 1}, GE, 3)],
    {"x": 2},
    sense="minimize",
)

EMPTY_FEASIBLE_SET = ip_of(
    [Variable("x", upper=9)],
    [
        LinearConstraint("hi", {"x": 1}, LE, 1),
        LinearConstraint("lo", {"x": 1}, GE, 2),
    ],
    {"x": 1},
)


class TestSolve:
    def test_saturating_single_cap(self):
        sol = solve(SATURATE)
        assert sol.status == "optimal"
        assert sol.objective == 3

    def test_bound_tight_minimum(self):
        sol = solve(BOUND_TIGHT)
        assert sol.status == "optimal"
        assert sol.objective == 6
        assert sol.values == {"x": 3}

    def test_infeasible_names_a_constraint(self):
        sol = solve(EMPTY_FEASIBLE_SET)
        assert sol.status == "infeasible"
        assert sol.infeasible_hint in ("hi", "lo")

    def test_unbounded(self):
        ip = ip_of([Variable("x")], [LinearConstraint("lo", {"x": 1}, GE, 0)], {"x": 1})
        assert solve(ip).status == "unbounded"

    def test_deterministic(self):
        a = solve(SATURATE)
        b = solve(SATURATE)
        assert a.values == b.values
        assert a.objective == b.objective
        assert a.slacks == b.slacks

    def test_slack_signs(self):
        sol = solve(SATURATE)
        assert sol.slacks["cap"] == 0
        ip = ip_of(
            [Variable("x", upper=9)],
            [LinearConstraint("lo", {"x": 1}, GE, 2)],
            {"x": -1},  # push x down to its constraint floor
        )
        sol = solve(ip)
        assert sol.values["x"] == 2
        assert sol.slacks["lo"] == 0

    def test_node_limit_is_loud(self):
        # A knapsack-ish instance with fractional LP optimum forces branching.
        ip = ip_of(
            [Variable(f"x{i}", upper=1) for i in range(12)],
            [
                LinearConstraint(
                    "w", {f"x{i}": 2 + (i % 3) for i in range(12)}, LE, 13
                )
            ],
            {f"x{i}": 3 + (i % 5) for i in range(12)},
        )
        with pytest.raises(ResourceLimitError):
            solve(ip, node_limit=1)

    def test_fractional_costs(self):
        ip = ip_of(
            [Variable("a", upper=5), Variable("b", upper=5)],
            [LinearConstraint("budget", {"a": 2.5, "b": 1.1}, LE, 6.0)],
            {"a": 1, "b": 1},
        )
        sol = solve(ip)
        assert sol.objective == brute_force_solve(ip).objective


class TestBruteForce:
    def test_matches_trivial_cases(self):
        assert brute_force_solve(SATURATE).objective == 3
        assert brute_force_solve(BOUND_TIGHT).objective == 6

    def test_infeasible(self):
        assert brute_force_solve(EMPTY_FEASIBLE_SET).status == "infeasible"

    def test_refuses_unbounded_box(self):
        ip = ip_of([Variable("x")], [LinearConstraint("c", {"x": 1}, LE, 5)], {"x": 1})
        with pytest.raises(SearchSpaceLimitError):
            brute_force_solve(ip)

    def test_refuses_oversized_box(self):
        ip = ip_of(
            [Variable(f"x{i}", upper=9) for i in range(9)],
            [LinearConstraint("c", {"x0": 1}, LE, 5)],
            {"x0": 1},
        )
        with pytest.raises(SearchSpaceLimitError, match="1e"):
            brute_force_solve(ip)

    def test_lexicographic_tie_break(self):
        # x0 + x1 = 2 with equal objective weight: (0, 2) comes first.
        ip = ip_of(
            [Variable("x0", upper=2), Variable("x1", upper=2)],
            [LinearConstraint("sum", {"x0": 1, "x1": 1}, EQ, 2)],
            {"x0": 1, "x1": 1},
        )
        assert brute_force_solve(ip).values == {"x0": 0, "x1": 2}


class TestValidateSolution:
    def test_optimal_output_passes(self):
        assert validate_solution(SATURATE, solve(SATURATE)) == []

    def test_corrupted_value_is_reported(self):
        sol = solve(SATURATE)
        bumped = dict(sol.values)
        bumped["x2"] += 1  # breaks the tight cap row
        bad = Solution(status="optimal", values=bumped, objective=4, slacks={})
        reports = validate_solution(SATURATE, bad)
        assert [r.label for r in reports] == ["cap"]

    def test_bound_and_integrality_violations(self):
        ip = ip_of([Variable("x", upper=2)], [LinearConstraint("c", {"x": 1}, LE, 2)], {"x": 1})
        bad = Solution(status="optimal", values={"x": 3}, objective=3, slacks={})
        kinds = {r.kind for r in validate_solution(ip, bad)}
        assert "bound" in kinds

    def test_brute_force_output_always_validates(self):
        rng = random.Random(5)
        for _ in range(25):
            n = rng.randint(1, 5)
            ip = ip_of(
                [Variable(f"x{j}", upper=rng.randint(1, 3)) for j in range(n)],
                [
                    LinearConstraint(
                        f"c{k}",
                        {f"x{j}": rng.choice([-1, 1, 2]) for j in rng.sample(range(n), rng.randint(1, n))},
                        rng.choice([LE, GE, EQ]),
                        rng.randint(-2, 6),
                    )
                    for k in range(rng.randint(0, 4))
                ],
                {f"x{j}": rng.uniform(-2, 3) for j in range(n)},
                sense=rng.choice(["maximize", "minimize"]),
            )
            sol = brute_force_solve(ip)
            if sol.status == "optimal":
                assert validate_solution(ip, sol) == []


class TestRandomCrossChecks:
    def test_solver_equals_oracle_on_generic_ips(self):
        rng = random.Random(12345)
        for _ in range(120):
            n = rng.randint(1, 8)
            variables = [
                Variable(f"x{j}", lower=rng.choice([0, 0, 0, 1]), upper=rng.randint(1, 4))
                for j in range(n)
            ]
            constraints = []
            for k in range(rng.randint(0, 6)):
                picked = rng.sample(range(n), rng.randint(1, n))
                constraints.append(
                    LinearConstraint(
                        f"c{k}",
                        {f"x{j}": rng.choice([-2, -1, 1, 1, 2, 3]) for j in picked},
                        rng.choice([LE, LE, EQ, GE]),
                        rng.randint(-3, 10),
                    )
                )
            ip = ip_of(
                variables,
                constraints,
                {f"x{j}": rng.choice([-2, -1, 0, 1, 2, 3]) + rng.random() for j in range(n)},
                sense=rng.choice(["maximize", "minimize"]),
            )
            a, b = solve(ip), brute_force_solve(ip)
            assert a.status == b.status, f"{a.status} != {b.status}"
            if a.status == "optimal":
                assert a.objective == pytest.approx(b.objective, abs=1e-6)
                assert validate_solution(ip, a) == []

    def test_lp_relaxation_bounds_integer_optimum(self):
        rng = random.Random(99)
        for _ in range(40):
            n = rng.randint(1, 6)
            ip = ip_of(
                [Variable(f"x{j}", upper=rng.randint(1, 4)) for j in range(n)],
                [
                    LinearConstraint(
                        f"c{k}",
                        {f"x{j}": rng.randint(1, 3) for j in rng.sample(range(n), rng.randint(1, n))},
                        LE,
                        rng.randint(1, 8),
                    )
                    for k in range(rng.randint(1, 4))
                ],
                {f"x{j}": rng.uniform(0.1, 3) for j in range(n)},
            )
            sol = solve(ip)
            assert sol.status == "optimal"
            assert sol.stats.root_bound >= sol.objective - 1e-7


class TestSimplexDirect:
    def test_agrees_with_scipy_reference(self):
        linprog = pytest.importorskip("scipy.optimize").linprog
        rng = random.Random(777)
        for _ in range(120):
            n, m = rng.randint(1, 8), rng.randint(0, 6)
            lower = np.array([float(rng.choice([0, 0, 1])) for _ in range(n)])
            upper = np.maximum(
                np.array([rng.choice([np.inf, 3.0, 5.0, 10.0]) for _ in range(n)]), lower
            )
            a = np.array(
                [[rng.choice([-2, -1, 0, 0, 1, 2, 3]) for _ in range(n)] for _ in range(m)],
                dtype=float,
            ).reshape(m, n)
            rels = [rng.choice([LE, LE, EQ, GE]) for _ in range(m)]
            b = np.array([rng.uniform(-3, 12) for _ in range(m)])
            c = np.array([rng.uniform(-3, 3) for _ in range(n)])
            res = solve_lp(a, rels, b, c, lower, upper, maximize=False)

            a_ub, b_ub, a_eq, b_eq = [], [], [], []
            for i, rel in enumerate(rels):
                if rel == LE:
                    a_ub.append(a[i]), b_ub.append(b[i])
                elif rel == GE:
                    a_ub.append(-a[i]), b_ub.append(-b[i])
                else:
                    a_eq.append(a[i]), b_eq.append(b[i])
            ref = linprog(
                c,
                A_ub=np.array(a_ub) if a_ub else None,
                b_ub=np.array(b_ub) if b_ub else None,
                A_eq=np.array(a_eq) if a_eq else None,
                b_eq=np.array(b_eq) if b_eq else None,
                bounds=list(zip(lower, [None if not np.isfinite(u) else u for u in upper])),
                method="highs",
            )
            if ref.status == 0:
                assert res.status == "optimal"
                assert res.objective == pytest.approx(ref.fun, abs=1e-6)
            elif ref.status == 2:
                assert res.status == "infeasible"
            elif ref.status == 3:
                assert res.status == "unbounded"


class TestProgramValidation:
    def test_unknown_variable_rejected(self):
        with pytest.raises(IllFormedProgramError):
            ip_of([Variable("x")], [LinearConstraint("c", {"y": 1}, LE, 1)], {"x": 1})

    def test_bad_bounds_rejected(self):
        with pytest.raises(IllFormedProgramError):
            Variable("x", lower=3, upper=2)

    def test_all_zero_row_rejected(self):
        with pytest.raises(IllFormedProgramError):
            LinearConstraint("c", {"x": 0.0}, LE, 1)

    def test_duplicate_names_rejected(self):
        with pytest.raises(IllFormedProgramError):
            ip_of([Variable("x"), Variable("x")], [], {"x": 1})


def test_lp_text_dump_roundtrips_every_piece():
    text = to_lp_text(SATURATE)
    assert "maximize: 1 x1 + 1 x2;" in text
    assert "cap: 1 x1 + 1 x2 <= 3;" in text
    assert "bounds: 0 <= x1 <= 10;" in text
    assert "integers: x1 x2;" in text
