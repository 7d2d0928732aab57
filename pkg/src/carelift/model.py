"""Core domain types: places, resources, scenarios, and the routed network."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .errors import ValidationError

COMMERCIAL = "commercial"
GENERAL = "general"

ORIGIN_SIDE = "origin"
DESTINATION_SIDE = "destination"

MODE_PRIVATE_VEHICLE = "private_vehicle"
MODE_RIDE_HAIL = "ride_hail"
GROUND_MODES = (MODE_PRIVATE_VEHICLE, MODE_RIDE_HAIL)

ARC_ACCESS_GENERAL = "access_general"
ARC_ACCESS_COMMERCIAL = "access_commercial"
ARC_GA_FLIGHT = "ga_flight"
ARC_COMMERCIAL_FLIGHT = "commercial_flight"
ARC_EGRESS_GENERAL = "egress_general"
ARC_EGRESS_COMMERCIAL = "egress_commercial"
ARC_DIRECT = "direct"

ARC_KINDS = (
    ARC_ACCESS_GENERAL,
    ARC_ACCESS_COMMERCIAL,
    ARC_GA_FLIGHT,
    ARC_COMMERCIAL_FLIGHT,
    ARC_EGRESS_GENERAL,
    ARC_EGRESS_COMMERCIAL,
    ARC_DIRECT,
)

#: Arc kinds whose travel time is capped by the airport access/egress limit.
ACCESS_EGRESS_KINDS = (
    ARC_ACCESS_GENERAL,
    ARC_ACCESS_COMMERCIAL,
    ARC_EGRESS_GENERAL,
    ARC_EGRESS_COMMERCIAL,
)
FLIGHT_KINDS = (ARC_GA_FLIGHT, ARC_COMMERCIAL_FLIGHT)

#: Origin-side airports may come from anywhere in this regional pool when the
#: trip originates inside it; otherwise only the origin state's own airports
#: are considered.  Destination airports always stay within the destination
#: state.
ORIGIN_AIRPORT_POOL = frozenset(
    {"KS", "OK", "TX", "LA", "AR", "MO", "KY", "TN", "MS", "AL", "GA", "FL", "SC", "NC"}
)


@dataclass(frozen=True)
class County:
    """Demand node; ``demand`` is persons per day, filled per scenario."""

    id: str
    state: str
    name: str
    latitude: float
    longitude: float
    eligible_population: int
    demand: int = 0


@dataclass(frozen=True)
class Airport:
    id: str
    kind: str  # commercial | general
    state: str
    county_id: str
    latitude: float
    longitude: float
    side: str | None = None  # origin | destination, set per scenario


@dataclass(frozen=True)
class Clinic:
    id: str
    name: str
    state: str
    county_id: str
    latitude: float
    longitude: float
    capacity_per_day: int
    open: bool = False


@dataclass(frozen=True)
class Scenario:
    """Everything the planner chooses for one day of operations."""

    origin_state: str
    destination_state: str
    open_clinic_ids: frozenset[str]
    pilots_standby: int
    budget: float
    max_access_egress_min: float
    max_flight_min: float
    max_direct_min: float
    origin_drivers: dict[str, int] = field(default_factory=dict)
    destination_drivers: dict[str, int] = field(default_factory=dict)
    companions: bool = False
    aircraft_capacity: int = 4
    vehicle_capacity: int = 2
    ride_hail_rate: float = 0.40
    demand_overrides: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        details = validate_scenario_fields(self)
        if details:
            raise ValidationError("invalid scenario", details)

    @property
    def effective_budget(self) -> float:
        """Daily budget available per traveling party (halved with companions)."""
        return self.budget / (2 if self.companions else 1)


@dataclass(frozen=True)
class Arc:
    """One traversable leg; fare and seats only exist on commercial flights."""

    kind: str
    tail: str
    head: str
    travel_time_min: float
    mode: str | None = None
    fare: float | None = None
    seats: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ARC_KINDS:
            raise ValueError(f"unknown arc kind {self.kind!r}")
        is_flight = self.kind in FLIGHT_KINDS
        if is_flight and self.mode is not None:
            raise ValueError(f"{self.kind} arc cannot carry a ground mode")
        if not is_flight and self.mode not in GROUND_MODES:
            raise ValueError(f"{self.kind} arc needs a ground mode")
        has_commercial_data = self.fare is not None and self.seats is not None
        if (self.kind == ARC_COMMERCIAL_FLIGHT) != has_commercial_data:
            raise ValueError("fare and seats belong to commercial flights only")
        if self.travel_time_min < 0:
            raise ValueError("travel time must be >= 0")


@dataclass(frozen=True)
class Network:
    """Scenario-specific node sets and the arcs that survived time pruning."""

    scenario: Scenario
    counties: tuple[County, ...]
    origin_commercial: tuple[Airport, ...]
    origin_general: tuple[Airport, ...]
    dest_commercial: tuple[Airport, ...]
    dest_general: tuple[Airport, ...]
    clinics: tuple[Clinic, ...]
    dest_counties: tuple[County, ...]
    arcs: tuple[Arc, ...]

    @property
    def demand_total(self) -> int:
        return sum(c.demand for c in self.counties)

    def arcs_of_kind(self, kind: str) -> list[Arc]:
        return [a for a in self.arcs if a.kind == kind]


def estimate_demand(eligible_population: int, state_abortion_rate: float) -> int:
    """Persons per day: population / 365, scaled by the annual per-1000 rate.

    Rounds half-up so small counties are not permanently rounded to zero.
    """
    if eligible_population < 0:
        raise ValueError("eligible_population must be >= 0")
    if state_abortion_rate < 0:
        raise ValueError("state_abortion_rate must be >= 0")
    daily = (
        Decimal(eligible_population)
        * Decimal(str(state_abortion_rate))
        / Decimal(365 * 1000)
    )
    return int(daily.quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def effective_capacity(raw: int, companions: bool) -> int:
    """Usable capacity once every traveler may bring one companion.

    Floor division: seats and persons are integral.
    """
    return raw // 2 if companions else raw


def validate_scenario_fields(scenario: Scenario) -> list[dict]:
    """Field-level problems with a scenario; empty when valid."""
    details: list[dict] = []

    def bad(fieldname: str, message: str) -> None:
        details.append({"field": fieldname, "message": message})

    if not scenario.origin_state or not scenario.destination_state:
        bad("origin_state", "origin and destination states are required")
    elif scenario.origin_state == scenario.destination_state:
        bad("destination_state", "destination state must differ from origin state")
    for name in ("pilots_standby", "aircraft_capacity", "vehicle_capacity"):
        value = getattr(scenario, name)
        if not isinstance(value, int) or value < 0:
            bad(name, "must be a nonnegative integer")
    if scenario.budget < 0:
        bad("budget", "must be >= 0")
    if scenario.ride_hail_rate < 0:
        bad("ride_hail_rate", "must be >= 0")
    for name in ("max_access_egress_min", "max_flight_min", "max_direct_min"):
        if getattr(scenario, name) <= 0:
            bad(name, "must be > 0")
    for name in ("origin_drivers", "destination_drivers"):
        pools = getattr(scenario, name)
        for county_id, count in pools.items():
            if not isinstance(count, int) or count < 0:
                bad(f"{name}[{county_id}]", "driver count must be a nonnegative integer")
    for county_id, persons in scenario.demand_overrides.items():
        if not isinstance(persons, int) or persons < 0:
            bad(
                f"demand_overrides[{county_id}]",
                "demand override must be a nonnegative integer",
            )
    return details


_SCENARIO_DEFAULTS = {
    "origin_drivers": dict,
    "destination_drivers": dict,
    "demand_overrides": dict,
    "companions": lambda: False,
    "aircraft_capacity": lambda: 4,
    "vehicle_capacity": lambda: 2,
    "ride_hail_rate": lambda: 0.40,
}

_SCENARIO_REQUIRED = (
    "origin_state",
    "destination_state",
    "open_clinic_ids",
    "pilots_standby",
    "budget",
    "max_access_egress_min",
    "max_flight_min",
    "max_direct_min",
)


def scenario_from_dict(payload: dict) -> Scenario:
    """Parse the wire/file form of a scenario, collecting every field error."""
    if not isinstance(payload, dict):
        raise ValidationError("scenario body must be a JSON object")
    details: list[dict] = []
    known = set(_SCENARIO_REQUIRED) | set(_SCENARIO_DEFAULTS)
    for key in payload:
        if key not in known:
            details.append({"field": key, "message": "unknown field"})
    for key in _SCENARIO_REQUIRED:
        if key not in payload:
            details.append({"field": key, "message": "required field missing"})
    if details:
        raise ValidationError("invalid scenario", details)

    kwargs = dict(payload)
    for key, default in _SCENARIO_DEFAULTS.items():
        kwargs.setdefault(key, default())
    clinic_ids = kwargs.pop("open_clinic_ids")
    if not isinstance(clinic_ids, (list, tuple, set, frozenset)) or not all(
        isinstance(c, str) for c in clinic_ids
    ):
        raise ValidationError(
            "invalid scenario",
            [{"field": "open_clinic_ids", "message": "must be a list of clinic ids"}],
        )
    for name in ("budget", "max_access_egress_min", "max_flight_min", "max_direct_min", "ride_hail_rate"):
        if isinstance(kwargs.get(name), bool) or not isinstance(
            kwargs.get(name), (int, float)
        ):
            raise ValidationError(
                "invalid scenario", [{"field": name, "message": "must be a number"}]
            )
        kwargs[name] = float(kwargs[name])
    if not isinstance(kwargs["companions"], bool):
        raise ValidationError(
            "invalid scenario", [{"field": "companions", "message": "must be a boolean"}]
        )
    for name in ("origin_drivers", "destination_drivers", "demand_overrides"):
        if not isinstance(kwargs[name], dict):
            raise ValidationError(
                "invalid scenario", [{"field": name, "message": "must be an object"}]
            )
    return Scenario(open_clinic_ids=frozenset(clinic_ids), **kwargs)


def scenario_to_dict(scenario: Scenario) -> dict:
    """Wire/file form with stable key order and sorted clinic ids."""
    return {
        "origin_state": scenario.origin_state,
        "destination_state": scenario.destination_state,
        "open_clinic_ids": sorted(scenario.open_clinic_ids),
        "pilots_standby": scenario.pilots_standby,
        "aircraft_capacity": scenario.aircraft_capacity,
        "vehicle_capacity": scenario.vehicle_capacity,
        "budget": scenario.budget,
        "max_access_egress_min": scenario.max_access_egress_min,
        "max_flight_min": scenario.max_flight_min,
        "max_direct_min": scenario.max_direct_min,
        "origin_drivers": dict(sorted(scenario.origin_drivers.items())),
        "destination_drivers": dict(sorted(scenario.destination_drivers.items())),
        "companions": scenario.companions,
        "ride_hail_rate": scenario.ride_hail_rate,
        "demand_overrides": dict(sorted(scenario.demand_overrides.items())),
    }
