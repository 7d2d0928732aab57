"""Turn raw solver output into the digest a nonprofit planner reads.

Per-clinic and per-county figures come from the aggregate arrival
variables, so they are stable whenever alternate optima only reshuffle
paths; mode- and vehicle-level figures necessarily describe the particular
optimal flow the solver returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .formulation import (
    CLINIC_TOTAL,
    SpendBreakdown,
    VariableCatalog,
    spend,
)
from .ilp import MINIMIZE, IntegerProgram, Solution
from .model import (
    ARC_COMMERCIAL_FLIGHT,
    ARC_DIRECT,
    ARC_EGRESS_COMMERCIAL,
    ARC_EGRESS_GENERAL,
    ARC_GA_FLIGHT,
    MODE_PRIVATE_VEHICLE,
    Network,
    Scenario,
    effective_capacity,
)

MODE_COMMERCIAL = "commercial"
MODE_GENERAL_AVIATION = "general_aviation"
MODE_DIRECT = "direct"


@dataclass(frozen=True)
class ResourceReport:
    """What was left over at the optimum, in planner units."""

    budget_unused: float  # nominal dollars
    ga_seats_unused: int
    ga_aircraft_unused: int
    origin_vehicles_unused: dict[str, int]
    destination_vehicles_unused: dict[str, int]
    commercial_seats_unused: dict[tuple[str, str], int]
    clinic_capacity_unused: dict[str, int]


@dataclass(frozen=True)
class PlanReport:
    total_transported: int
    demand_total: int
    satisfaction: float
    modal_split: dict[str, int]
    spend: SpendBreakdown
    excess: ResourceReport
    per_county: dict[str, int]
    per_clinic: dict[str, int]


def _family_sum(solution: Solution, catalog: VariableCatalog, family: str) -> int:
    return sum(solution.values.get(name, 0) for name, _ in catalog.family(family))


def modal_distribution(solution: Solution, catalog: VariableCatalog) -> dict[str, int]:
    """Persons per transport mode; the three entries sum to total arrivals."""
    return {
        MODE_COMMERCIAL: _family_sum(solution, catalog, ARC_COMMERCIAL_FLIGHT),
        MODE_GENERAL_AVIATION: _family_sum(solution, catalog, ARC_GA_FLIGHT),
        MODE_DIRECT: _family_sum(solution, catalog, ARC_DIRECT),
    }


def total_transported(solution: Solution, catalog: VariableCatalog) -> int:
    return _family_sum(solution, catalog, CLINIC_TOTAL)


def demand_satisfaction(
    solution: Solution, catalog: VariableCatalog, network: Network
) -> float:
    """Transported persons over total daily demand; 1.0 when nothing was asked."""
    demand = network.demand_total
    if demand == 0:
        return 1.0
    return total_transported(solution, catalog) / demand


def _vehicles_used(persons: int, scenario: Scenario) -> int:
    seats = persons * (2 if scenario.companions else 1)
    if scenario.vehicle_capacity <= 0:
        return 0
    return math.ceil(seats / scenario.vehicle_capacity)


def resource_slacks(
    solution: Solution,
    ip: IntegerProgram,
    catalog: VariableCatalog,
    scenario: Scenario,
) -> ResourceReport:
    """Map constraint slacks at the optimum onto planner-facing excess resources.

    Vehicle pools convert person-slack into whole unused vehicles (partially
    loaded cars count as used); budget slack is reported in nominal dollars.
    """
    slacks = solution.slacks
    party = 2 if scenario.companions else 1

    if "c7" in slacks:
        budget_unused = slacks["c7"] * party
    elif ip.sense == MINIMIZE:
        # Cost-minimizing programs carry the cost expression as the objective
        # instead of a budget row.
        budget_unused = scenario.budget - party * ip.objective_value(solution.values)
    else:
        budget_unused = scenario.budget  # no paid arcs at all

    eff_ga = effective_capacity(
        scenario.aircraft_capacity * scenario.pilots_standby, scenario.companions
    )
    ga_used = _family_sum(solution, catalog, ARC_GA_FLIGHT)
    ga_seats_unused = int(slacks.get("c4", eff_ga - ga_used))
    if scenario.aircraft_capacity > 0:
        aircraft_used = math.ceil(ga_used * party / scenario.aircraft_capacity)
        ga_aircraft_unused = scenario.pilots_standby - aircraft_used
    else:
        ga_aircraft_unused = scenario.pilots_standby

    origin_unused: dict[str, int] = {}
    for q in catalog.counties:
        persons = sum(
            solution.values.get(name, 0)
            for name, key in catalog.name_to_key.items()
            if key.county == q
            and key.mode == MODE_PRIVATE_VEHICLE
            and key.family not in (ARC_EGRESS_COMMERCIAL, ARC_EGRESS_GENERAL)
        )
        pool = scenario.origin_drivers.get(q, 0)
        origin_unused[q] = pool - _vehicles_used(persons, scenario)

    dest_unused: dict[str, int] = {}
    for v in sorted(set(catalog.airport_county.values())):
        persons = sum(
            solution.values.get(name, 0)
            for name, key in catalog.name_to_key.items()
            if key.family in (ARC_EGRESS_COMMERCIAL, ARC_EGRESS_GENERAL)
            and key.mode == MODE_PRIVATE_VEHICLE
            and catalog.airport_county[key.airport] == v
        )
        pool = scenario.destination_drivers.get(v, 0)
        dest_unused[v] = pool - _vehicles_used(persons, scenario)

    seats_unused = {
        (m, r): int(slacks[f"c5[{m}|{r}]"])
        for m, r in catalog.flight_pairs
        if f"c5[{m}|{r}]" in slacks
    }
    clinic_unused = {
        c: int(slacks[f"c6[{c}]"]) for c in catalog.clinics if f"c6[{c}]" in slacks
    }

    return ResourceReport(
        budget_unused=budget_unused,
        ga_seats_unused=ga_seats_unused,
        ga_aircraft_unused=ga_aircraft_unused,
        origin_vehicles_unused=origin_unused,
        destination_vehicles_unused=dest_unused,
        commercial_seats_unused=seats_unused,
        clinic_capacity_unused=clinic_unused,
    )


def build_plan_report(
    solution: Solution,
    ip: IntegerProgram,
    catalog: VariableCatalog,
    network: Network,
    scenario: Scenario,
) -> PlanReport:
    """Assemble the full planner digest for an optimal solution."""
    per_county = {
        q: sum(
            solution.values.get(name, 0)
            for name, key in catalog.name_to_key.items()
            if key.family == CLINIC_TOTAL and key.county == q
        )
        for q in catalog.counties
    }
    per_clinic = {
        c: sum(
            solution.values.get(name, 0)
            for name, key in catalog.name_to_key.items()
            if key.family == CLINIC_TOTAL and key.clinic == c
        )
        for c in catalog.clinics
    }
    total = total_transported(solution, catalog)
    return PlanReport(
        total_transported=total,
        demand_total=network.demand_total,
        satisfaction=demand_satisfaction(solution, catalog, network),
        modal_split=modal_distribution(solution, catalog),
        spend=spend(solution.values, catalog, network, scenario),
        excess=resource_slacks(solution, ip, catalog, scenario),
        per_county=per_county,
        per_clinic=per_clinic,
    )


def money(value: float) -> str:
    """Money fields serialize as decimal strings with two fraction digits."""
    return f"{value + 0.0:.2f}"


def report_to_dict(report: PlanReport) -> dict:
    """JSON form with stable key order; money as 2-digit decimal strings."""
    ex = report.excess
    return {
        "total_transported": report.total_transported,
        "demand_total": report.demand_total,
        "satisfaction": round(report.satisfaction, 6),
        "modal_split": {
            "commercial": report.modal_split[MODE_COMMERCIAL],
            "general_aviation": report.modal_split[MODE_GENERAL_AVIATION],
            "direct": report.modal_split[MODE_DIRECT],
        },
        "spend": {
            "fares": money(report.spend.fares),
            "ride_hail": money(report.spend.ride_hail),
            "total": money(report.spend.total),
        },
        "excess": {
            "budget_unused": money(ex.budget_unused),
            "ga_seats_unused": ex.ga_seats_unused,
            "ga_aircraft_unused": ex.ga_aircraft_unused,
            "origin_vehicles_unused": dict(sorted(ex.origin_vehicles_unused.items())),
            "destination_vehicles_unused": dict(
                sorted(ex.destination_vehicles_unused.items())
            ),
            "commercial_seats_unused": {
                f"{m}->{r}": n
                for (m, r), n in sorted(ex.commercial_seats_unused.items())
            },
            "clinic_capacity_unused": dict(sorted(ex.clinic_capacity_unused.items())),
        },
        "per_county": dict(sorted(report.per_county.items())),
        "per_clinic": dict(sorted(report.per_clinic.items())),
    }
