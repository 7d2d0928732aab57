"""Acceptance suite: one test per release criterion, one PASS line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS lines
and timings.  The randomized instance stream is deterministic, so every
run exercises the same scenarios.
"""

import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from carelift.analytics import modal_distribution, resource_slacks
from carelift.dataio import ReferenceData, FlightLeg, load_datasets
from carelift.formulation import build_max_flow, build_min_cost, spend
from carelift.ilp import brute_force_solve, solve, validate_solution
from carelift.model import Clinic, scenario_from_dict, scenario_to_dict
from carelift.network import build_network
from carelift.planner import run_model

from conftest import Instance, tiny_instances

DEMO_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "missouri-illinois-demo"


def report(line: str) -> None:
    print(f"\nACCEPTANCE PASS: {line}")


@pytest.fixture(scope="module")
def oracle_instances() -> list[Instance]:
    return tiny_instances(200, seed0=1000)


@pytest.fixture(scope="module")
def solved_max(oracle_instances):
    return {inst.seed: solve(inst.ip_max) for inst in oracle_instances}


def rebuild(scenario_dict: dict, data: ReferenceData):
    scenario = scenario_from_dict(scenario_dict)
    network = build_network(scenario, data)
    return scenario, network


def with_data_changes(data: ReferenceData, flights=None, clinics=None) -> ReferenceData:
    return ReferenceData(
        counties=data.counties,
        airports=data.airports,
        clinics=clinics if clinics is not None else data.clinics,
        flights=flights if flights is not None else data.flights,
        surface_times=data.surface_times,
        state_rates=data.state_rates,
    )


def test_oracle_equivalence_on_200_instances(oracle_instances, solved_max):
    started = time.monotonic()
    checked = 0
    for inst in oracle_instances:
        for ip, known in ((inst.ip_max, solved_max[inst.seed]), (inst.ip_min, None)):
            exact = known if known is not None else solve(ip)
            oracle = brute_force_solve(ip)
            assert exact.status == oracle.status, f"seed {inst.seed}: status diverged"
            if exact.status == "optimal":
                assert exact.objective == pytest.approx(oracle.objective, abs=1e-6), (
                    f"seed {inst.seed}: {exact.objective} != {oracle.objective}"
                )
            checked += 1
    elapsed = time.monotonic() - started
    assert checked == 400
    assert elapsed < 120, f"oracle sweep took {elapsed:.1f}s"
    report(
        f"oracle equivalence on {len(oracle_instances)} scenarios x 2 models "
        f"({elapsed:.1f}s)"
    )


def test_invariants_on_every_solved_instance(oracle_instances, solved_max):
    for inst in oracle_instances:
        for ip, catalog, known in (
            (inst.ip_max, inst.cat_max, solved_max[inst.seed]),
            (inst.ip_min, inst.cat_min, None),
        ):
            sol = known if known is not None else solve(ip)
            if sol.status != "optimal":
                continue
            # Flow balance and capacities, exactly (integer data throughout).
            assert validate_solution(ip, sol, tol=1e-9) == []
            costs = spend(sol.values, catalog, inst.network, inst.scenario)
            c7 = next((c for c in ip.constraints if c.label == "c7"), None)
            lhs = c7.lhs(sol.values) if c7 else sum(
                coeff * sol.values[name] for name, coeff in ip.objective.items()
            ) * (1.0 if ip.sense == "minimize" else 0.0)
            if c7 is not None:
                assert costs.total == pytest.approx(lhs, abs=1e-6)
            split = modal_distribution(sol, catalog)
            arrivals = sum(
                sol.values[n] for n, k in catalog.name_to_key.items() if k.family == "clinic_total"
            )
            assert sum(split.values()) == arrivals
    report("flow balance, capacities, spend == budget row, modal-split identity")


def test_budget_slack_resolve(oracle_instances, solved_max):
    for inst in oracle_instances:
        sol = solved_max[inst.seed]
        assert sol.status == "optimal"
        excess = resource_slacks(sol, inst.ip_max, inst.cat_max, inst.scenario)
        reduced = max(0.0, inst.scenario.budget - excess.budget_unused)
        body = scenario_to_dict(inst.scenario)
        body["budget"] = reduced
        scenario, network = rebuild(body, inst.data)
        ip, _ = build_max_flow(network, scenario)
        again = solve(ip)
        assert again.status == "optimal"
        assert again.objective == pytest.approx(sol.objective, abs=1e-9), (
            f"seed {inst.seed}: {inst.scenario.budget} -> {reduced} changed "
            f"{sol.objective} to {again.objective}"
        )
    report("budget-slack re-solve keeps the optimum on all instances")


def test_companion_halving_equivalence(oracle_instances):
    for inst in oracle_instances[:100]:
        base = scenario_to_dict(inst.scenario)
        base["companions"] = False
        plain, plain_net = rebuild(base, inst.data)

        doubled = dict(base)
        doubled["companions"] = True
        doubled["budget"] = base["budget"] * 2
        doubled["pilots_standby"] = base["pilots_standby"] * 2
        doubled["origin_drivers"] = {k: v * 2 for k, v in base["origin_drivers"].items()}
        doubled["destination_drivers"] = {
            k: v * 2 for k, v in base["destination_drivers"].items()
        }
        data2 = with_data_changes(
            inst.data,
            flights={
                key: FlightLeg(f.origin_airport, f.dest_airport, f.seats * 2, f.avg_fare, f.avg_time_min)
                for key, f in inst.data.flights.items()
            },
        )
        paired, paired_net = rebuild(doubled, data2)

        for build in (build_max_flow, build_min_cost):
            ip_a, _ = build(plain_net, plain)
            ip_b, _ = build(paired_net, paired)
            a, b = solve(ip_a), solve(ip_b)
            assert a.status == b.status, f"seed {inst.seed}"
            if a.status == "optimal":
                assert a.objective == pytest.approx(b.objective, abs=1e-9), (
                    f"seed {inst.seed}"
                )
    report("companion halving equals pre-halved capacities (both models)")


def test_time_pruning_equivalence():
    with_forced_rows = 0
    for inst in tiny_instances(100, seed0=30000, oracle_tractable=False):
        unpruned_net = build_network(inst.scenario, inst.data, prune=False)
        for build in (build_max_flow, build_min_cost):
            pruned_ip, _ = build(inst.network, inst.scenario)
            literal_ip, _ = build(unpruned_net, inst.scenario)
            forced = [c for c in literal_ip.constraints if c.label[0] == "t" and c.rhs == 0]
            if forced:
                with_forced_rows += 1
            a, b = solve(pruned_ip), solve(literal_ip)
            assert a.status == b.status, f"seed {inst.seed}"
            if a.status == "optimal":
                assert a.objective == pytest.approx(b.objective, abs=1e-9), (
                    f"seed {inst.seed}"
                )
    assert with_forced_rows > 50  # the comparison must actually bite
    report(
        f"arc pruning equals literal zero-forcing rows "
        f"({with_forced_rows} program pairs had over-limit arcs)"
    )


def test_monotonicity_spot_checks():
    instances = tiny_instances(50, seed0=40000, oracle_tractable=False)
    import random

    checks = 0
    for inst in instances:
        base_obj = solve(inst.ip_max).objective
        rng = random.Random(inst.seed)
        for resource in rng.sample(
            ["budget", "pilots", "origin_drivers", "destination_drivers", "seats", "clinic", "demand"],
            3,
        ):
            body = scenario_to_dict(inst.scenario)
            data = inst.data
            if resource == "budget":
                body["budget"] += rng.uniform(5, 60)
            elif resource == "pilots":
                body["pilots_standby"] += 1
            elif resource == "origin_drivers":
                q = rng.choice(sorted(c.id for c in inst.network.counties))
                body["origin_drivers"][q] = body["origin_drivers"].get(q, 0) + 1
            elif resource == "destination_drivers":
                pool = sorted(c.id for c in inst.network.dest_counties)
                if not pool:
                    body["budget"] += 10
                else:
                    v = rng.choice(pool)
                    body["destination_drivers"][v] = body["destination_drivers"].get(v, 0) + 1
            elif resource == "seats":
                if not data.flights:
                    body["budget"] += 10
                else:
                    key = rng.choice(sorted(data.flights))
                    legs = dict(data.flights)
                    leg = legs[key]
                    legs[key] = FlightLeg(
                        leg.origin_airport, leg.dest_airport, leg.seats + 1, leg.avg_fare, leg.avg_time_min
                    )
                    data = with_data_changes(data, flights=legs)
            elif resource == "clinic":
                cid = rng.choice(sorted(data.clinics))
                clinics = dict(data.clinics)
                c = clinics[cid]
                clinics[cid] = Clinic(
                    c.id, c.name, c.state, c.county_id, c.latitude, c.longitude, c.capacity_per_day + 1
                )
                data = with_data_changes(data, clinics=clinics)
            elif resource == "demand":
                q = rng.choice(sorted(c.id for c in inst.network.counties))
                body["demand_overrides"][q] = body["demand_overrides"].get(q, 0) + 1
            scenario, network = rebuild(body, data)
            ip, _ = build_max_flow(network, scenario)
            bumped = solve(ip).objective
            assert bumped >= base_obj - 1e-9, (
                f"seed {inst.seed}: raising {resource} dropped {base_obj} -> {bumped}"
            )
            checks += 1
    assert checks == 150
    report("raising any one resource never lowers throughput (150 spot checks)")


def test_min_cost_consistency(oracle_instances, solved_max):
    # The min-cost model drops the budget row, so its feasibility tracks the
    # UNBUDGETED maximum flow: with money out of the picture, demand is fully
    # movable exactly when min-cost has any solution.  The budgeted max flow
    # only gives one direction (saturation implies feasibility); a budget-bound
    # instance can satisfy everyone by overspending, which is precisely the
    # "minimum funding required" question the cost model answers.
    for inst in oracle_instances:
        flow = solved_max[inst.seed]
        demand_total = inst.network.demand_total
        cost_sol = solve(inst.ip_min)

        # A budget no plan can exhaust: every paid flow is at most its
        # county's demand, so price that out, add a dollar, and undo the
        # companion halving.
        c7 = next((c for c in inst.ip_max.constraints if c.label == "c7"), None)
        demand = {c.id: c.demand for c in inst.network.counties}
        party = 2 if inst.scenario.companions else 1
        roomy = party * (
            1.0
            + (
                sum(
                    coeff * demand[inst.cat_max.name_to_key[n].county]
                    for n, coeff in c7.coefficients.items()
                )
                if c7
                else 0.0
            )
        )
        unconstrained = scenario_to_dict(inst.scenario)
        unconstrained["budget"] = max(unconstrained["budget"], roomy)
        scenario, network = rebuild(unconstrained, inst.data)
        ip, _ = build_max_flow(network, scenario)
        movable = solve(ip).objective
        assert (cost_sol.status == "infeasible") == (movable < demand_total), (
            f"seed {inst.seed}: movable {movable} of {demand_total} "
            f"but min cost is {cost_sol.status}"
        )

        if cost_sol.status == "infeasible":
            assert flow.objective < demand_total, f"seed {inst.seed}"
        if flow.objective == demand_total:
            assert cost_sol.status == "optimal", f"seed {inst.seed}"
            assert cost_sol.objective <= inst.scenario.effective_budget + 1e-9, (
                f"seed {inst.seed}"
            )
    report(
        "min-cost feasibility == unbudgeted demand saturation; "
        "saturating max flow bounds min cost by the budget"
    )


def test_demo_fixture_regression():
    started = time.monotonic()
    data = load_datasets(DEMO_DIR)
    scenario = scenario_from_dict(
        json.loads((DEMO_DIR / "scenario.json").read_text())
    )
    run = run_model(scenario, data, "max_flow")
    elapsed = time.monotonic() - started
    assert run.status == "optimal"
    assert run.report.total_transported == 8
    assert run.report.satisfaction == 1.0
    assert run.report.modal_split == {
        "commercial": 4,
        "general_aviation": 4,
        "direct": 0,
    }
    assert run.report.excess.ga_seats_unused == 0
    assert elapsed < 5.0, f"demo solve took {elapsed:.2f}s"

    # The ceiling of 8 is forced by construction: 4 commercial seats plus
    # 4 small-aircraft seats, with every direct arc over the time limit.
    caps = {c.label: c.rhs for c in run.ip.constraints}
    assert caps["c4"] == 4
    assert caps["c5[SGF|MDW]"] == 4
    assert not [a for a in run.network.arcs if a.kind == "direct"]
    assert validate_solution(run.ip, run.solution) == []
    report(f"demo fixture: 8 moved, 100% satisfied, 4/4/0 split ({elapsed:.2f}s)")


def test_cli_determinism():
    args = [
        sys.executable,
        "-m",
        "carelift.cli",
        "--data-root", str(DEMO_DIR),
        "--scenario", str(DEMO_DIR / "scenario.json"),
        "--model", "both",
    ]
    first = subprocess.run(args, capture_output=True, text=True)
    second = subprocess.run(args, capture_output=True, text=True)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    assert doc["max_flow"]["report"]["total_transported"] == 8
    report("CLI emits byte-identical JSON across runs")
