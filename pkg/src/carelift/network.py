"""Instantiate the scenario-specific routing network from reference data.

Node scoping: origin counties come from the origin state; origin airports
come from the origin state's regional pool; destination airports and open
clinics stay inside the destination state.  Candidate arcs of all seven
kinds are generated and every arc whose travel time exceeds its class bound
is deleted.  That deletion is exactly the feasible-set effect of the
per-arc time-limit constraints: with a fixed travel time t, forcing
``x * (t - bound) <= 0`` zeroes the flow precisely when t exceeds the
bound, so arcs at the bound survive.
"""

from __future__ import annotations

import logging
from dataclasses import replace

from .dataio import ReferenceData, ga_flight_time
from .errors import NotFoundError, ValidationError
from .model import (
    ARC_ACCESS_COMMERCIAL,
    ARC_ACCESS_GENERAL,
    ARC_COMMERCIAL_FLIGHT,
    ARC_DIRECT,
    ARC_EGRESS_COMMERCIAL,
    ARC_EGRESS_GENERAL,
    ARC_GA_FLIGHT,
    COMMERCIAL,
    DESTINATION_SIDE,
    GENERAL,
    GROUND_MODES,
    ORIGIN_AIRPORT_POOL,
    ORIGIN_SIDE,
    Airport,
    Arc,
    Network,
    Scenario,
    estimate_demand,
)

log = logging.getLogger(__name__)


def origin_airport_states(origin_state: str) -> frozenset[str]:
    """States whose airports can serve trips starting in ``origin_state``."""
    if origin_state in ORIGIN_AIRPORT_POOL:
        return ORIGIN_AIRPORT_POOL
    return frozenset({origin_state})


def _county_demand(scenario: Scenario, data: ReferenceData) -> dict[str, int]:
    counties = [c for c in data.counties.values() if c.state == scenario.origin_state]
    needs_rate = [c for c in counties if c.id not in scenario.demand_overrides]
    rate = data.state_rates.get(scenario.origin_state)
    if needs_rate and rate is None:
        raise NotFoundError(
            f"no abortion rate on file for state {scenario.origin_state!r}"
        )
    out = {}
    for county in counties:
        if county.id in scenario.demand_overrides:
            out[county.id] = scenario.demand_overrides[county.id]
        else:
            out[county.id] = estimate_demand(county.eligible_population, rate)
    return out


def build_network(scenario: Scenario, data: ReferenceData, prune: bool = True) -> Network:
    """Build the pruned multimodal network for one scenario.

    ``prune=False`` keeps over-limit arcs (used to verify that pruning and
    explicit zero-forcing rows agree); production callers always prune.
    """
    if not any(c.state == scenario.origin_state for c in data.counties.values()):
        raise NotFoundError(f"origin state {scenario.origin_state!r} has no counties on file")
    dest_known = any(a.state == scenario.destination_state for a in data.airports.values()) or any(
        c.state == scenario.destination_state for c in data.clinics.values()
    )
    if not dest_known:
        raise NotFoundError(
            f"destination state {scenario.destination_state!r} has no airports or clinics on file"
        )

    missing = sorted(cid for cid in scenario.open_clinic_ids if cid not in data.clinics)
    if missing:
        raise ValidationError(
            "unknown clinic ids",
            [{"field": "open_clinic_ids", "message": f"unknown clinic {cid!r}"} for cid in missing],
        )
    foreign = sorted(
        cid
        for cid in scenario.open_clinic_ids
        if data.clinics[cid].state != scenario.destination_state
    )
    if foreign:
        raise ValidationError(
            "clinics outside destination state",
            [
                {
                    "field": "open_clinic_ids",
                    "message": f"clinic {cid!r} is in {data.clinics[cid].state}, not "
                    f"{scenario.destination_state}",
                }
                for cid in foreign
            ],
        )

    demand = _county_demand(scenario, data)
    counties = tuple(
        replace(data.counties[cid], demand=demand[cid]) for cid in sorted(demand)
    )

    pool = origin_airport_states(scenario.origin_state)

    def side_airports(kind: str, states: frozenset[str] | set[str], side: str) -> tuple[Airport, ...]:
        picked = [
            a for a in data.airports.values() if a.kind == kind and a.state in states
        ]
        return tuple(replace(a, side=side) for a in sorted(picked, key=lambda a: a.id))

    origin_commercial = side_airports(COMMERCIAL, pool, ORIGIN_SIDE)
    origin_general = side_airports(GENERAL, pool, ORIGIN_SIDE)
    dest_states = {scenario.destination_state}
    dest_commercial = side_airports(COMMERCIAL, dest_states, DESTINATION_SIDE)
    dest_general = side_airports(GENERAL, dest_states, DESTINATION_SIDE)

    clinics = tuple(
        replace(data.clinics[cid], open=True) for cid in sorted(scenario.open_clinic_ids)
    )

    dest_county_ids = sorted({a.county_id for a in dest_commercial + dest_general})
    dest_counties = tuple(data.counties[cid] for cid in dest_county_ids)

    arcs: list[Arc] = []
    missing_records = 0

    def ground(kind: str, tail: str, head: str, bound: float) -> None:
        nonlocal missing_records
        for mode in GROUND_MODES:
            minutes = data.surface_minutes(tail, head, mode)
            if minutes is None:
                missing_records += 1
                log.debug("no %s surface time for %s -> %s", mode, tail, head)
                continue
            if prune and minutes > bound:
                continue
            arcs.append(Arc(kind=kind, tail=tail, head=head, mode=mode, travel_time_min=minutes))

    access_limit = scenario.max_access_egress_min
    flight_limit = scenario.max_flight_min
    direct_limit = scenario.max_direct_min

    for county in counties:
        for g in origin_general:
            ground(ARC_ACCESS_GENERAL, county.id, g.id, access_limit)
        for m in origin_commercial:
            ground(ARC_ACCESS_COMMERCIAL, county.id, m.id, access_limit)
        for clinic in clinics:
            ground(ARC_DIRECT, county.id, clinic.id, direct_limit)

    for g in origin_general:
        for p in dest_general:
            minutes = float(ga_flight_time(g, p))
            if prune and minutes > flight_limit:
                continue
            arcs.append(
                Arc(kind=ARC_GA_FLIGHT, tail=g.id, head=p.id, travel_time_min=minutes)
            )

    for m in origin_commercial:
        for r in dest_commercial:
            leg = data.flights.get((m.id, r.id))
            if leg is None:
                continue
            if prune and leg.avg_time_min > flight_limit:
                continue
            arcs.append(
                Arc(
                    kind=ARC_COMMERCIAL_FLIGHT,
                    tail=m.id,
                    head=r.id,
                    travel_time_min=leg.avg_time_min,
                    fare=leg.avg_fare,
                    seats=leg.seats,
                )
            )

    for r in dest_commercial:
        for clinic in clinics:
            ground(ARC_EGRESS_COMMERCIAL, r.id, clinic.id, access_limit)
    for p in dest_general:
        for clinic in clinics:
            ground(ARC_EGRESS_GENERAL, p.id, clinic.id, access_limit)

    if missing_records:
        log.warning(
            "%d candidate ground arcs skipped for lack of surface-time records",
            missing_records,
        )

    return Network(
        scenario=scenario,
        counties=counties,
        origin_commercial=origin_commercial,
        origin_general=origin_general,
        dest_commercial=dest_commercial,
        dest_general=dest_general,
        clinics=clinics,
        dest_counties=dest_counties,
        arcs=tuple(arcs),
    )
