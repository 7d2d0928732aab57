"""Deterministic synthetic datasets: a curated demo plus seeded random ones.

The curated ``missouri-illinois-demo`` is engineered so the optimum is
forced by construction and checkable by hand: two origin counties with four
travelers each, one commercial leg with exactly four seats, one volunteer
aircraft with four seats, and every direct-drive arc over the five-hour
limit.  Any optimal plan therefore moves 8 people, 4 by commercial air and
4 by small aircraft, leaving no small-aircraft seat unused.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .dataio import ReferenceData, FlightLeg, SurfaceTime, save_datasets
from .model import (
    COMMERCIAL,
    GENERAL,
    MODE_PRIVATE_VEHICLE,
    MODE_RIDE_HAIL,
    Airport,
    Clinic,
    County,
    Scenario,
    scenario_to_dict,
)

DEMO_NAME = "missouri-illinois-demo"


def write_fixture(data: ReferenceData, scenario: Scenario, root: str | Path) -> Path:
    """Write a dataset directory plus its companion scenario.json."""
    root = Path(root)
    save_datasets(data, root)
    payload = json.dumps(scenario_to_dict(scenario), indent=2, sort_keys=False)
    (root / "scenario.json").write_text(payload + "\n", encoding="utf-8")
    return root


def demo_bundle() -> tuple[ReferenceData, Scenario]:
    """The curated Missouri-to-Illinois demo dataset and its scenario."""
    counties = {
        "MO-BOONE": County("MO-BOONE", "MO", "Boone", 38.99, -92.33, 146000),
        "MO-GREENE": County("MO-GREENE", "MO", "Greene", 37.26, -93.29, 146000),
        "IL-COOK": County("IL-COOK", "IL", "Cook", 41.84, -87.68, 0),
    }
    airports = {
        "SGF": Airport("SGF", COMMERCIAL, "MO", "MO-GREENE", 37.245, -93.388),
        "M48": Airport("M48", GENERAL, "MO", "MO-BOONE", 38.95, -92.25),
        "MDW": Airport("MDW", COMMERCIAL, "IL", "IL-COOK", 41.786, -87.752),
        "PWK": Airport("PWK", GENERAL, "IL", "IL-COOK", 42.114, -87.901),
    }
    clinics = {
        "IL-C1": Clinic("IL-C1", "Near North Clinic", "IL", "IL-COOK", 41.90, -87.63, 5),
        "IL-C2": Clinic("IL-C2", "West Loop Clinic", "IL", "IL-COOK", 41.88, -87.66, 5),
        "IL-C3": Clinic("IL-C3", "Des Plaines Clinic", "IL", "IL-COOK", 42.03, -87.90, 5),
        "IL-C4": Clinic("IL-C4", "South Side Clinic", "IL", "IL-COOK", 41.79, -87.62, 5),
    }
    flights = {
        ("SGF", "MDW"): FlightLeg("SGF", "MDW", seats=4, avg_fare=250.37, avg_time_min=95.0),
    }

    pv, rh = MODE_PRIVATE_VEHICLE, MODE_RIDE_HAIL
    surface_rows = [
        # Access: each county reaches its own airport; the cross-state pairs
        # exceed the two-hour access limit and are pruned out.
        ("MO-GREENE", "SGF", pv, 25.0),
        ("MO-GREENE", "SGF", rh, 22.0),
        ("MO-GREENE", "M48", pv, 165.0),
        ("MO-GREENE", "M48", rh, 170.0),
        ("MO-BOONE", "M48", pv, 20.0),
        ("MO-BOONE", "M48", rh, 18.0),
        ("MO-BOONE", "SGF", pv, 170.0),
        ("MO-BOONE", "SGF", rh, 175.0),
        # Direct drives are all beyond the five-hour limit.
        ("MO-GREENE", "IL-C1", pv, 480.0),
        ("MO-GREENE", "IL-C2", pv, 478.0),
        ("MO-GREENE", "IL-C3", pv, 490.0),
        ("MO-GREENE", "IL-C4", pv, 476.0),
        ("MO-GREENE", "IL-C1", rh, 470.0),
        ("MO-GREENE", "IL-C2", rh, 468.0),
        ("MO-GREENE", "IL-C3", rh, 483.0),
        ("MO-GREENE", "IL-C4", rh, 466.0),
        ("MO-BOONE", "IL-C1", pv, 360.0),
        ("MO-BOONE", "IL-C2", pv, 358.0),
        ("MO-BOONE", "IL-C3", pv, 372.0),
        ("MO-BOONE", "IL-C4", pv, 356.0),
        ("MO-BOONE", "IL-C1", rh, 352.0),
        ("MO-BOONE", "IL-C2", rh, 350.0),
        ("MO-BOONE", "IL-C3", rh, 365.0),
        ("MO-BOONE", "IL-C4", rh, 348.0),
        # Egress from both destination airports to all four clinics.
        ("MDW", "IL-C1", pv, 34.0),
        ("MDW", "IL-C2", pv, 28.0),
        ("MDW", "IL-C3", pv, 45.0),
        ("MDW", "IL-C4", pv, 22.0),
        ("MDW", "IL-C1", rh, 30.0),
        ("MDW", "IL-C2", rh, 25.0),
        ("MDW", "IL-C3", rh, 41.0),
        ("MDW", "IL-C4", rh, 19.0),
        ("PWK", "IL-C1", pv, 38.0),
        ("PWK", "IL-C2", pv, 44.0),
        ("PWK", "IL-C3", pv, 16.0),
        ("PWK", "IL-C4", pv, 52.0),
        ("PWK", "IL-C1", rh, 35.0),
        ("PWK", "IL-C2", rh, 40.0),
        ("PWK", "IL-C3", rh, 14.0),
        ("PWK", "IL-C4", rh, 48.0),
    ]
    surface = {
        (t, h, m): SurfaceTime(t, h, m, minutes) for t, h, m, minutes in surface_rows
    }
    data = ReferenceData(
        counties=counties,
        airports=airports,
        clinics=clinics,
        flights=flights,
        surface_times=surface,
        state_rates={"MO": 10.0, "IL": 12.0},
    )
    scenario = Scenario(
        origin_state="MO",
        destination_state="IL",
        open_clinic_ids=frozenset(clinics),
        pilots_standby=1,
        budget=1500.0,
        max_access_egress_min=120.0,
        max_flight_min=180.0,
        max_direct_min=300.0,
        origin_drivers={"MO-BOONE": 3, "MO-GREENE": 3},
        destination_drivers={"IL-COOK": 10},
        companions=False,
    )
    return data, scenario


def write_demo_fixture(root: str | Path) -> Path:
    data, scenario = demo_bundle()
    return write_fixture(data, scenario, root)


@dataclass(frozen=True)
class FixtureShape:
    """Size knobs for seeded random fixtures; defaults stay oracle-tractable."""

    counties: int = 2
    origin_commercial: int = 1
    origin_general: int = 1
    dest_commercial: int = 1
    dest_general: int = 1
    dest_counties: int = 1
    clinics: int = 2
    max_demand: int = 2
    max_seats: int = 4
    max_drivers: int = 4
    max_pilots: int = 2
    arc_density: float = 0.8
    origin_state: str = "AA"
    destination_state: str = "BB"


def synthesize(seed: int, shape: FixtureShape = FixtureShape()) -> tuple[ReferenceData, Scenario]:
    """Deterministic random dataset + scenario for a seed and shape."""
    rng = random.Random(seed)

    counties: dict[str, County] = {}
    for i in range(shape.counties):
        cid = f"{shape.origin_state}-Q{i}"
        counties[cid] = County(
            id=cid,
            state=shape.origin_state,
            name=f"Origin {i}",
            latitude=round(36.0 + rng.uniform(-1.5, 1.5), 4),
            longitude=round(-94.0 + rng.uniform(-1.5, 1.5), 4),
            eligible_population=rng.randrange(0, 200_000, 500),
        )
    dest_county_ids = []
    for i in range(shape.dest_counties):
        cid = f"{shape.destination_state}-V{i}"
        dest_county_ids.append(cid)
        counties[cid] = County(
            id=cid,
            state=shape.destination_state,
            name=f"Destination {i}",
            latitude=round(41.0 + rng.uniform(-0.8, 0.8), 4),
            longitude=round(-88.0 + rng.uniform(-0.8, 0.8), 4),
            eligible_population=0,
        )

    airports: dict[str, Airport] = {}

    def add_airports(prefix: str, kind: str, count: int, state: str, county_pool: list[str], base):
        for i in range(count):
            aid = f"{prefix}{i}"
            airports[aid] = Airport(
                id=aid,
                kind=kind,
                state=state,
                county_id=rng.choice(county_pool),
                latitude=round(base[0] + rng.uniform(-2.5, 2.5), 4),
                longitude=round(base[1] + rng.uniform(-2.5, 2.5), 4),
            )

    origin_county_ids = [c for c in counties if counties[c].state == shape.origin_state]
    add_airports("M", COMMERCIAL, shape.origin_commercial, shape.origin_state, origin_county_ids, (36.0, -94.0))
    add_airports("G", GENERAL, shape.origin_general, shape.origin_state, origin_county_ids, (36.0, -94.0))
    add_airports("R", COMMERCIAL, shape.dest_commercial, shape.destination_state, dest_county_ids, (41.0, -88.0))
    add_airports("P", GENERAL, shape.dest_general, shape.destination_state, dest_county_ids, (41.0, -88.0))

    clinics: dict[str, Clinic] = {}
    for i in range(shape.clinics):
        cid = f"C{i}"
        clinics[cid] = Clinic(
            id=cid,
            name=f"Clinic {i}",
            state=shape.destination_state,
            county_id=rng.choice(dest_county_ids),
            latitude=round(41.0 + rng.uniform(-0.8, 0.8), 4),
            longitude=round(-88.0 + rng.uniform(-0.8, 0.8), 4),
            capacity_per_day=rng.randint(0, 5),
        )

    flights: dict[tuple[str, str], FlightLeg] = {}
    for m in sorted(a for a in airports if airports[a].kind == COMMERCIAL and airports[a].state == shape.origin_state):
        for r in sorted(a for a in airports if airports[a].kind == COMMERCIAL and airports[a].state == shape.destination_state):
            if rng.random() > shape.arc_density:
                continue
            flights[(m, r)] = FlightLeg(
                origin_airport=m,
                dest_airport=r,
                seats=rng.randint(0, shape.max_seats),
                avg_fare=round(rng.uniform(8.0, 60.0), 2),
                avg_time_min=round(rng.uniform(60.0, 240.0), 1),
            )

    surface: dict[tuple[str, str, str], SurfaceTime] = {}

    def add_surface(tail: str, head: str, lo: float, hi: float) -> None:
        for mode in (MODE_PRIVATE_VEHICLE, MODE_RIDE_HAIL):
            if rng.random() > shape.arc_density:
                continue
            minutes = round(rng.uniform(lo, hi), 1)
            surface[(tail, head, mode)] = SurfaceTime(tail, head, mode, minutes)

    origin_airport_ids = sorted(a for a in airports if airports[a].state == shape.origin_state)
    dest_airport_ids = sorted(a for a in airports if airports[a].state == shape.destination_state)
    for q in sorted(origin_county_ids):
        for a in origin_airport_ids:
            add_surface(q, a, 20.0, 160.0)
        for c in sorted(clinics):
            add_surface(q, c, 120.0, 420.0)
    for a in dest_airport_ids:
        for c in sorted(clinics):
            add_surface(a, c, 10.0, 160.0)

    data = ReferenceData(
        counties=counties,
        airports=airports,
        clinics=clinics,
        flights=flights,
        surface_times=surface,
        state_rates={shape.origin_state: round(rng.uniform(5.0, 15.0), 1)},
    )

    budget_style = rng.random()
    if budget_style < 0.25:
        budget = round(rng.uniform(0.0, 30.0), 2)
    elif budget_style < 0.85:
        budget = round(rng.uniform(20.0, 200.0), 2)
    else:
        budget = 10_000.0
    scenario = Scenario(
        origin_state=shape.origin_state,
        destination_state=shape.destination_state,
        open_clinic_ids=frozenset(clinics),
        pilots_standby=rng.randint(0, shape.max_pilots),
        budget=budget,
        max_access_egress_min=120.0,
        max_flight_min=180.0,
        max_direct_min=300.0,
        origin_drivers={q: rng.randint(0, shape.max_drivers) for q in sorted(origin_county_ids)},
        destination_drivers={v: rng.randint(0, shape.max_drivers) for v in dest_county_ids},
        companions=rng.random() < 0.3,
        demand_overrides={q: rng.randint(0, shape.max_demand) for q in sorted(origin_county_ids)},
    )
    return data, scenario


def generate_fixture(seed: int, shape: FixtureShape, root: str | Path) -> Path:
    """Write the seeded random fixture to ``root``; byte-identical per seed."""
    data, scenario = synthesize(seed, shape)
    return write_fixture(data, scenario, root)
