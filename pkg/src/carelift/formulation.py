"""Build the two integer programs from a network and scenario.

Max-throughput model: maximize total arrivals subject to per-county demand
(c1), origin volunteer-vehicle pools (c2), destination volunteer-vehicle
pools per airport county (c3), small-aircraft seats (c4), per-leg commercial
seats (c5), clinic capacity (c6), the daily budget (c7), and conservation of
people through every airport (f1-f4) plus the per-clinic aggregation row
(f5).  Travel-time limits are enforced by network pruning, not rows; when a
network was deliberately built unpruned, explicit zero-forcing rows are
emitted for every over-limit arc so both routes agree.

Min-cost model: same rows, except per-county demand becomes an equality
(everyone must travel) and the budget row is dropped; the objective becomes
the cost expression that c7 bounded.

With companions every traveler occupies two seats, so vehicle, aircraft,
seat, and budget capacities are halved (integer floors for seat counts).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .ilp import (
    EQ,
    LE,
    MAXIMIZE,
    MINIMIZE,
    IntegerProgram,
    LinearConstraint,
    Variable,
)
from .model import (
    ARC_ACCESS_COMMERCIAL,
    ARC_ACCESS_GENERAL,
    ARC_COMMERCIAL_FLIGHT,
    ARC_DIRECT,
    ARC_EGRESS_COMMERCIAL,
    ARC_EGRESS_GENERAL,
    ARC_GA_FLIGHT,
    MODE_PRIVATE_VEHICLE,
    MODE_RIDE_HAIL,
    Arc,
    Network,
    Scenario,
    effective_capacity,
)

MAX_FLOW = "max_flow"
MIN_COST = "min_cost"

CLINIC_TOTAL = "clinic_total"

_MODE_TAG = {MODE_PRIVATE_VEHICLE: "pv", MODE_RIDE_HAIL: "rh"}
_FAMILY_TAG = {
    ARC_ACCESS_GENERAL: "ag",
    ARC_ACCESS_COMMERCIAL: "ac",
    ARC_GA_FLIGHT: "gf",
    ARC_COMMERCIAL_FLIGHT: "cf",
    ARC_EGRESS_COMMERCIAL: "ec",
    ARC_EGRESS_GENERAL: "eg",
    ARC_DIRECT: "dr",
    CLINIC_TOTAL: "tot",
}
#: Zero-forcing row tag per arc family, used only on unpruned networks.
_TIME_ROW_TAG = {
    ARC_DIRECT: "t1",
    ARC_ACCESS_GENERAL: "t2",
    ARC_ACCESS_COMMERCIAL: "t3",
    ARC_EGRESS_COMMERCIAL: "t4",
    ARC_EGRESS_GENERAL: "t5",
    ARC_COMMERCIAL_FLIGHT: "t6",
    ARC_GA_FLIGHT: "t7",
}


@dataclass(frozen=True)
class FlowKey:
    """Typed identity of one decision variable."""

    family: str
    county: str
    airport: str | None = None  # tail airport (access, flights) or egress airport
    airport2: str | None = None  # head airport of a flight arc
    clinic: str | None = None
    mode: str | None = None


@dataclass
class VariableCatalog:
    """Bidirectional variable-name / flow-key map plus network snapshots."""

    name_to_key: dict[str, FlowKey] = field(default_factory=dict)
    key_to_name: dict[FlowKey, str] = field(default_factory=dict)
    #: destination airport id -> county id (for volunteer-pool accounting)
    airport_county: dict[str, str] = field(default_factory=dict)
    counties: tuple[str, ...] = ()
    clinics: tuple[str, ...] = ()
    flight_pairs: tuple[tuple[str, str], ...] = ()

    def add(self, name: str, key: FlowKey) -> None:
        self.name_to_key[name] = key
        self.key_to_name[key] = name

    def family(self, family: str) -> list[tuple[str, FlowKey]]:
        return [(n, k) for n, k in self.name_to_key.items() if k.family == family]

    def arc_tuple(self, key: FlowKey) -> tuple[str, str, str, str | None]:
        """(kind, tail, head, mode) of the arc this variable flows over."""
        if key.family in (ARC_ACCESS_GENERAL, ARC_ACCESS_COMMERCIAL):
            return key.family, key.county, key.airport, key.mode
        if key.family in (ARC_GA_FLIGHT, ARC_COMMERCIAL_FLIGHT):
            return key.family, key.airport, key.airport2, None
        if key.family in (ARC_EGRESS_COMMERCIAL, ARC_EGRESS_GENERAL):
            return key.family, key.airport, key.clinic, key.mode
        if key.family == ARC_DIRECT:
            return key.family, key.county, key.clinic, key.mode
        raise ValueError(f"{key.family} variables do not ride a single arc")


def _name(key: FlowKey) -> str:
    tag = _FAMILY_TAG[key.family]
    parts = [key.county]
    if key.family in (ARC_GA_FLIGHT, ARC_COMMERCIAL_FLIGHT):
        parts += [key.airport, key.airport2]
    elif key.family in (ARC_EGRESS_COMMERCIAL, ARC_EGRESS_GENERAL):
        parts += [key.airport, key.clinic, _MODE_TAG[key.mode]]
    elif key.family in (ARC_ACCESS_GENERAL, ARC_ACCESS_COMMERCIAL):
        parts += [key.airport, _MODE_TAG[key.mode]]
    elif key.family == ARC_DIRECT:
        parts += [key.clinic, _MODE_TAG[key.mode]]
    elif key.family == CLINIC_TOTAL:
        parts += [key.clinic]
    return f"{tag}[" + "|".join(parts) + "]"


def arc_index(network: Network) -> dict[tuple[str, str, str, str | None], Arc]:
    return {(a.kind, a.tail, a.head, a.mode): a for a in network.arcs}


def _time_bound(arc: Arc, scenario: Scenario) -> float:
    if arc.kind == ARC_DIRECT:
        return scenario.max_direct_min
    if arc.kind in (ARC_GA_FLIGHT, ARC_COMMERCIAL_FLIGHT):
        return scenario.max_flight_min
    return scenario.max_access_egress_min


@dataclass
class _Builder:
    network: Network
    scenario: Scenario
    model: str

    def build(self) -> tuple[IntegerProgram, VariableCatalog]:
        net, sc = self.network, self.scenario
        if net.scenario != sc:
            raise ValidationError("network was built from a different scenario")

        y = sc.companions
        party = 2 if y else 1
        eff_budget = sc.effective_budget
        eff_ga_seats = effective_capacity(sc.aircraft_capacity * sc.pilots_standby, y)

        catalog = VariableCatalog(
            airport_county={
                a.id: a.county_id for a in net.dest_commercial + net.dest_general
            },
            counties=tuple(c.id for c in net.counties),
            clinics=tuple(c.id for c in net.clinics),
        )
        demand = {c.id: c.demand for c in net.counties}

        def pool_cap(drivers: dict[str, int], county_id: str) -> int:
            return effective_capacity(
                sc.vehicle_capacity * drivers.get(county_id, 0), y
            )

        def ride_hail_cap(minutes: float) -> int | None:
            # Any single paid flow is capped by what the whole budget can buy.
            if self.model != MAX_FLOW:
                return None
            unit = sc.ride_hail_rate * minutes
            if unit <= 0:
                return None
            return int(eff_budget / unit + 1e-9)

        def fare_cap(fare: float) -> int | None:
            if self.model != MAX_FLOW or fare <= 0:
                return None
            return int(eff_budget / fare + 1e-9)

        variables: list[Variable] = []
        forced_rows: list[LinearConstraint] = []

        def add_var(key: FlowKey, arc: Arc | None, caps: list[int | None]) -> str:
            name = _name(key)
            catalog.add(name, key)
            upper = min(
                [demand[key.county]] + [c for c in caps if c is not None]
            )
            variables.append(Variable(name, 0, upper))
            if arc is not None:
                bound = _time_bound(arc, sc)
                if arc.travel_time_min > bound:
                    tag = _TIME_ROW_TAG[arc.kind]
                    forced_rows.append(
                        LinearConstraint(f"{tag}[{name}]", {name: 1.0}, LE, 0.0)
                    )
            return name

        by_kind: dict[str, list[Arc]] = {}
        for arc in net.arcs:
            by_kind.setdefault(arc.kind, []).append(arc)

        ga_arcs = by_kind.get(ARC_GA_FLIGHT, [])
        cf_arcs = by_kind.get(ARC_COMMERCIAL_FLIGHT, [])

        # Variables, grouped per county so enumeration-style oracles prune early.
        for q in catalog.counties:
            for arc in by_kind.get(ARC_ACCESS_GENERAL, []):
                if arc.tail != q:
                    continue
                caps = [pool_cap(sc.origin_drivers, q)] if arc.mode == MODE_PRIVATE_VEHICLE else [
                    ride_hail_cap(arc.travel_time_min)
                ]
                add_var(
                    FlowKey(ARC_ACCESS_GENERAL, q, airport=arc.head, mode=arc.mode),
                    arc,
                    caps,
                )
            for arc in by_kind.get(ARC_ACCESS_COMMERCIAL, []):
                if arc.tail != q:
                    continue
                caps = [pool_cap(sc.origin_drivers, q)] if arc.mode == MODE_PRIVATE_VEHICLE else [
                    ride_hail_cap(arc.travel_time_min)
                ]
                add_var(
                    FlowKey(ARC_ACCESS_COMMERCIAL, q, airport=arc.head, mode=arc.mode),
                    arc,
                    caps,
                )
            for arc in ga_arcs:
                add_var(
                    FlowKey(ARC_GA_FLIGHT, q, airport=arc.tail, airport2=arc.head),
                    arc,
                    [eff_ga_seats],
                )
            for arc in cf_arcs:
                add_var(
                    FlowKey(ARC_COMMERCIAL_FLIGHT, q, airport=arc.tail, airport2=arc.head),
                    arc,
                    [effective_capacity(arc.seats, y), fare_cap(arc.fare)],
                )
            for arc in by_kind.get(ARC_EGRESS_COMMERCIAL, []):
                caps = (
                    [pool_cap(sc.destination_drivers, catalog.airport_county[arc.tail])]
                    if arc.mode == MODE_PRIVATE_VEHICLE
                    else [ride_hail_cap(arc.travel_time_min)]
                )
                add_var(
                    FlowKey(
                        ARC_EGRESS_COMMERCIAL, q, airport=arc.tail, clinic=arc.head, mode=arc.mode
                    ),
                    arc,
                    caps,
                )
            for arc in by_kind.get(ARC_EGRESS_GENERAL, []):
                caps = (
                    [pool_cap(sc.destination_drivers, catalog.airport_county[arc.tail])]
                    if arc.mode == MODE_PRIVATE_VEHICLE
                    else [ride_hail_cap(arc.travel_time_min)]
                )
                add_var(
                    FlowKey(
                        ARC_EGRESS_GENERAL, q, airport=arc.tail, clinic=arc.head, mode=arc.mode
                    ),
                    arc,
                    caps,
                )
            for arc in by_kind.get(ARC_DIRECT, []):
                if arc.tail != q:
                    continue
                caps = [pool_cap(sc.origin_drivers, q)] if arc.mode == MODE_PRIVATE_VEHICLE else [
                    ride_hail_cap(arc.travel_time_min)
                ]
                add_var(
                    FlowKey(ARC_DIRECT, q, clinic=arc.head, mode=arc.mode), arc, caps
                )
            # Aggregate arrivals exist for every county/clinic pair, even when
            # every path was pruned (f5 then forces them to zero).
            clinic_caps = {k.id: k.capacity_per_day for k in net.clinics}
            for c in catalog.clinics:
                add_var(FlowKey(CLINIC_TOTAL, q, clinic=c), None, [clinic_caps[c]])

        catalog.flight_pairs = tuple((a.tail, a.head) for a in cf_arcs)

        constraints = self._constraint_rows(catalog, demand, eff_ga_seats, eff_budget, pool_cap)
        constraints.extend(forced_rows)

        if self.model == MAX_FLOW:
            objective = {n: 1.0 for n, _ in catalog.family(CLINIC_TOTAL)}
            sense = MAXIMIZE
        else:
            objective = self._cost_terms(catalog)
            sense = MINIMIZE

        ip = IntegerProgram(
            variables=tuple(variables),
            constraints=tuple(constraints),
            objective=objective,
            sense=sense,
        )
        return ip, catalog

    # -- rows ---------------------------------------------------------------

    def _cost_terms(self, catalog: VariableCatalog) -> dict[str, float]:
        sc = self.scenario
        arcs = arc_index(self.network)
        terms: dict[str, float] = {}
        for name, key in catalog.name_to_key.items():
            if key.family == CLINIC_TOTAL:
                continue
            arc = arcs[catalog.arc_tuple(key)]
            if key.family == ARC_COMMERCIAL_FLIGHT and arc.fare > 0:
                terms[name] = arc.fare
            elif key.mode == MODE_RIDE_HAIL:
                cost = sc.ride_hail_rate * arc.travel_time_min
                if cost > 0:
                    terms[name] = cost
        return terms

    def _constraint_rows(self, catalog, demand, eff_ga_seats, eff_budget, pool_cap):
        sc = self.scenario
        rows: list[LinearConstraint] = []
        keys = catalog.name_to_key

        def row(label: str, coeffs: dict[str, float], relation: str, rhs: float) -> None:
            coeffs = {n: c for n, c in coeffs.items() if c != 0}
            if coeffs:
                rows.append(LinearConstraint(label, coeffs, relation, rhs))

        outflow_families = (
            ARC_ACCESS_GENERAL,
            ARC_ACCESS_COMMERCIAL,
            ARC_DIRECT,
        )
        for q in catalog.counties:
            coeffs = {
                n: 1.0
                for n, k in keys.items()
                if k.county == q and k.family in outflow_families
            }
            relation = EQ if self.model == MIN_COST else LE
            if coeffs:
                row(f"c1[{q}]", coeffs, relation, demand[q])
            elif self.model == MIN_COST and demand[q] > 0:
                # Demand that cannot leave its county: flag with an always-false
                # row on the aggregate variables so infeasibility is explicit.
                agg = {
                    n: 1.0
                    for n, k in keys.items()
                    if k.county == q and k.family == CLINIC_TOTAL
                }
                if agg:
                    row(f"c1[{q}]", agg, EQ, demand[q])

        for q in catalog.counties:
            coeffs = {
                n: 1.0
                for n, k in keys.items()
                if k.county == q
                and k.family in outflow_families
                and k.mode == MODE_PRIVATE_VEHICLE
            }
            row(f"c2[{q}]", coeffs, LE, pool_cap(sc.origin_drivers, q))

        dest_counties = sorted({v for v in catalog.airport_county.values()})
        for v in dest_counties:
            coeffs = {
                n: 1.0
                for n, k in keys.items()
                if k.family in (ARC_EGRESS_COMMERCIAL, ARC_EGRESS_GENERAL)
                and k.mode == MODE_PRIVATE_VEHICLE
                and catalog.airport_county[k.airport] == v
            }
            row(f"c3[{v}]", coeffs, LE, pool_cap(sc.destination_drivers, v))

        row(
            "c4",
            {n: 1.0 for n, k in keys.items() if k.family == ARC_GA_FLIGHT},
            LE,
            eff_ga_seats,
        )

        arcs = arc_index(self.network)
        for m, r in catalog.flight_pairs:
            arc = arcs[(ARC_COMMERCIAL_FLIGHT, m, r, None)]
            coeffs = {
                n: 1.0
                for n, k in keys.items()
                if k.family == ARC_COMMERCIAL_FLIGHT and k.airport == m and k.airport2 == r
            }
            row(
                f"c5[{m}|{r}]",
                coeffs,
                LE,
                effective_capacity(arc.seats, sc.companions),
            )

        clinic_caps = {c.id: c.capacity_per_day for c in self.network.clinics}
        for c in catalog.clinics:
            coeffs = {
                n: 1.0
                for n, k in keys.items()
                if k.family == CLINIC_TOTAL and k.clinic == c
            }
            row(f"c6[{c}]", coeffs, LE, clinic_caps[c])

        if self.model == MAX_FLOW:
            row("c7", self._cost_terms(catalog), LE, eff_budget)

        # Conservation through airports, per originating county.
        for q in catalog.counties:
            for m in sorted({a.id for a in self.network.origin_commercial}):
                coeffs = {}
                for n, k in keys.items():
                    if k.county != q:
                        continue
                    if k.family == ARC_ACCESS_COMMERCIAL and k.airport == m:
                        coeffs[n] = 1.0
                    elif k.family == ARC_COMMERCIAL_FLIGHT and k.airport == m:
                        coeffs[n] = -1.0
                row(f"f1[{q}|{m}]", coeffs, EQ, 0.0)
            for g in sorted({a.id for a in self.network.origin_general}):
                coeffs = {}
                for n, k in keys.items():
                    if k.county != q:
                        continue
                    if k.family == ARC_ACCESS_GENERAL and k.airport == g:
                        coeffs[n] = 1.0
                    elif k.family == ARC_GA_FLIGHT and k.airport == g:
                        coeffs[n] = -1.0
                row(f"f2[{q}|{g}]", coeffs, EQ, 0.0)
            for r in sorted({a.id for a in self.network.dest_commercial}):
                coeffs = {}
                for n, k in keys.items():
                    if k.county != q:
                        continue
                    if k.family == ARC_COMMERCIAL_FLIGHT and k.airport2 == r:
                        coeffs[n] = 1.0
                    elif k.family == ARC_EGRESS_COMMERCIAL and k.airport == r:
                        coeffs[n] = -1.0
                row(f"f3[{q}|{r}]", coeffs, EQ, 0.0)
            for p in sorted({a.id for a in self.network.dest_general}):
                coeffs = {}
                for n, k in keys.items():
                    if k.county != q:
                        continue
                    if k.family == ARC_GA_FLIGHT and k.airport2 == p:
                        coeffs[n] = 1.0
                    elif k.family == ARC_EGRESS_GENERAL and k.airport == p:
                        coeffs[n] = -1.0
                row(f"f4[{q}|{p}]", coeffs, EQ, 0.0)

        for q in catalog.counties:
            for c in catalog.clinics:
                coeffs: dict[str, float] = {}
                for n, k in keys.items():
                    if k.county != q:
                        continue
                    if k.family in (ARC_EGRESS_COMMERCIAL, ARC_EGRESS_GENERAL, ARC_DIRECT) and k.clinic == c:
                        coeffs[n] = 1.0
                    elif k.family == CLINIC_TOTAL and k.clinic == c:
                        coeffs[n] = -1.0
                row(f"f5[{q}|{c}]", coeffs, EQ, 0.0)

        return rows


def build_max_flow(network: Network, scenario: Scenario) -> tuple[IntegerProgram, VariableCatalog]:
    """Throughput-maximizing program over the pruned network."""
    return _Builder(network, scenario, MAX_FLOW).build()


def build_min_cost(network: Network, scenario: Scenario) -> tuple[IntegerProgram, VariableCatalog]:
    """Cost-minimizing program; demand rows become equalities, budget row drops."""
    return _Builder(network, scenario, MIN_COST).build()


@dataclass(frozen=True)
class SpendBreakdown:
    fares: float
    ride_hail: float
    total: float


def spend(
    values: dict[str, int],
    catalog: VariableCatalog,
    network: Network,
    scenario: Scenario,
) -> SpendBreakdown:
    """Dollar cost of a solved flow; matches the budget row's left side exactly.

    With companions this is the per-traveler-party figure the halved budget
    bounds; the nominal cash outlay is twice it.
    """
    arcs = arc_index(network)
    fares = 0.0
    ride_hail = 0.0
    for name, key in catalog.name_to_key.items():
        flow = values.get(name, 0)
        if not flow or key.family == CLINIC_TOTAL:
            continue
        arc = arcs[catalog.arc_tuple(key)]
        if key.family == ARC_COMMERCIAL_FLIGHT:
            fares += flow * arc.fare
        elif key.mode == MODE_RIDE_HAIL:
            ride_hail += flow * scenario.ride_hail_rate * arc.travel_time_min
    return SpendBreakdown(fares=fares, ride_hail=ride_hail, total=fares + ride_hail)
