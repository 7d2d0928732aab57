"""File-backed reference data: loading, validation, and derived travel times.

All reference data arrives as six CSV files (UTF-8, header row, RFC-4180).
Live lookup services for roads and airfares are out of scope; these loaders
accept the same record shapes such services would produce, so a fetching
adapter can be bolted on later without touching the model.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import DataFormatError
from .model import (
    COMMERCIAL,
    GENERAL,
    GROUND_MODES,
    Airport,
    Clinic,
    County,
)

log = logging.getLogger(__name__)

EARTH_RADIUS_MILES = 3958.8
GA_CRUISE_MPH = 130.0

COUNTY_COLUMNS = ["id", "state", "name", "lat", "lon", "eligible_population"]
AIRPORT_COLUMNS = ["id", "kind", "state", "county_id", "lat", "lon"]
CLINIC_COLUMNS = ["id", "name", "state", "county_id", "lat", "lon", "capacity_per_day"]
FLIGHT_COLUMNS = ["origin_airport", "dest_airport", "seats", "avg_fare", "avg_time_min"]
SURFACE_COLUMNS = ["tail_node", "head_node", "mode", "time_min"]
RATE_COLUMNS = ["state", "abortions_per_1000_women"]

FILES = {
    "counties.csv": COUNTY_COLUMNS,
    "airports.csv": AIRPORT_COLUMNS,
    "clinics.csv": CLINIC_COLUMNS,
    "flights.csv": FLIGHT_COLUMNS,
    "surface_times.csv": SURFACE_COLUMNS,
    "state_rates.csv": RATE_COLUMNS,
}


@dataclass(frozen=True)
class FlightLeg:
    """Daily commercial service between two airports."""

    origin_airport: str
    dest_airport: str
    seats: int
    avg_fare: float
    avg_time_min: float


@dataclass(frozen=True)
class SurfaceTime:
    """Directional ground travel time between two nodes on one mode."""

    tail_node: str
    head_node: str
    mode: str
    time_min: float


@dataclass(frozen=True)
class ReferenceData:
    """Validated bundle of everything the planner reads from disk."""

    counties: dict[str, County]
    airports: dict[str, Airport]
    clinics: dict[str, Clinic]
    flights: dict[tuple[str, str], FlightLeg]
    surface_times: dict[tuple[str, str, str], SurfaceTime]
    state_rates: dict[str, float]
    warnings: tuple[str, ...] = ()

    def surface_minutes(self, tail: str, head: str, mode: str) -> float | None:
        rec = self.surface_times.get((tail, head, mode))
        return rec.time_min if rec else None

    def states(self) -> set[str]:
        found = {c.state for c in self.counties.values()}
        found |= {a.state for a in self.airports.values()}
        found |= {c.state for c in self.clinics.values()}
        return found


class _Sheet:
    """One parsed CSV with its path retained for error messages."""

    def __init__(self, path: Path, columns: list[str]):
        self.path = path
        if not path.is_file():
            raise DataFormatError(f"{path}: missing file")
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            unknown = sorted(set(header) - set(columns))
            if unknown:
                raise DataFormatError(f"{path}:1: unknown column(s) {unknown}")
            missing = sorted(set(columns) - set(header))
            if missing:
                raise DataFormatError(f"{path}:1: missing column(s) {missing}")
            self.rows = [(reader.line_num, row) for row in reader]

    def fail(self, line: int, message: str) -> DataFormatError:
        return DataFormatError(f"{self.path}:{line}: {message}")


def _parse_int(sheet: _Sheet, line: int, field: str, raw: str, minimum: int = 0) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise sheet.fail(line, f"{field}: not an integer: {raw!r}") from None
    if value < minimum:
        raise sheet.fail(line, f"{field}: must be >= {minimum}, got {value}")
    return value


def _parse_float(
    sheet: _Sheet, line: int, field: str, raw: str, minimum: float | None = None, strict: bool = False
) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise sheet.fail(line, f"{field}: not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise sheet.fail(line, f"{field}: must be finite")
    if minimum is not None:
        if strict and value <= minimum:
            raise sheet.fail(line, f"{field}: must be > {minimum}, got {value}")
        if not strict and value < minimum:
            raise sheet.fail(line, f"{field}: must be >= {minimum}, got {value}")
    return value


def load_datasets(root: str | Path) -> ReferenceData:
    """Load and cross-validate the six reference CSVs under ``root``.

    Raises :class:`DataFormatError` with ``file:line`` context on the first
    structural problem; soft data-coverage issues land in ``warnings``.
    """
    root = Path(root)
    sheets = {name: _Sheet(root / name, cols) for name, cols in FILES.items()}
    warnings: list[str] = []

    counties: dict[str, County] = {}
    sheet = sheets["counties.csv"]
    for line, row in sheet.rows:
        cid = row["id"]
        if cid in counties:
            raise sheet.fail(line, f"duplicate county id {cid!r}")
        counties[cid] = County(
            id=cid,
            state=row["state"],
            name=row["name"],
            latitude=_parse_float(sheet, line, "lat", row["lat"]),
            longitude=_parse_float(sheet, line, "lon", row["lon"]),
            eligible_population=_parse_int(sheet, line, "eligible_population", row["eligible_population"]),
        )

    airports: dict[str, Airport] = {}
    sheet = sheets["airports.csv"]
    for line, row in sheet.rows:
        aid = row["id"]
        if aid in airports:
            raise sheet.fail(line, f"duplicate airport id {aid!r}")
        if row["kind"] not in (COMMERCIAL, GENERAL):
            raise sheet.fail(line, f"kind: must be commercial or general, got {row['kind']!r}")
        if row["county_id"] not in counties:
            raise sheet.fail(line, f"county_id: unknown county {row['county_id']!r}")
        airports[aid] = Airport(
            id=aid,
            kind=row["kind"],
            state=row["state"],
            county_id=row["county_id"],
            latitude=_parse_float(sheet, line, "lat", row["lat"]),
            longitude=_parse_float(sheet, line, "lon", row["lon"]),
        )

    clinics: dict[str, Clinic] = {}
    sheet = sheets["clinics.csv"]
    for line, row in sheet.rows:
        cid = row["id"]
        if cid in clinics:
            raise sheet.fail(line, f"duplicate clinic id {cid!r}")
        if row["county_id"] not in counties:
            raise sheet.fail(line, f"county_id: unknown county {row['county_id']!r}")
        clinics[cid] = Clinic(
            id=cid,
            name=row["name"],
            state=row["state"],
            county_id=row["county_id"],
            latitude=_parse_float(sheet, line, "lat", row["lat"]),
            longitude=_parse_float(sheet, line, "lon", row["lon"]),
            capacity_per_day=_parse_int(sheet, line, "capacity_per_day", row["capacity_per_day"]),
        )

    flights: dict[tuple[str, str], FlightLeg] = {}
    sheet = sheets["flights.csv"]
    for line, row in sheet.rows:
        key = (row["origin_airport"], row["dest_airport"])
        if key in flights:
            raise sheet.fail(line, f"duplicate flight leg {key[0]}->{key[1]}")
        for end, label in (key[0], "origin_airport"), (key[1], "dest_airport"):
            if end not in airports:
                raise sheet.fail(line, f"{label}: unknown airport {end!r}")
            if airports[end].kind != COMMERCIAL:
                raise sheet.fail(line, f"{label}: {end!r} is not a commercial airport")
        flights[key] = FlightLeg(
            origin_airport=key[0],
            dest_airport=key[1],
            seats=_parse_int(sheet, line, "seats", row["seats"]),
            avg_fare=_parse_float(sheet, line, "avg_fare", row["avg_fare"], minimum=0.0),
            avg_time_min=_parse_float(sheet, line, "avg_time_min", row["avg_time_min"], minimum=0.0, strict=True),
        )

    node_ids = set(counties) | set(airports) | set(clinics)
    surface: dict[tuple[str, str, str], SurfaceTime] = {}
    sheet = sheets["surface_times.csv"]
    for line, row in sheet.rows:
        if row["mode"] not in GROUND_MODES:
            raise sheet.fail(line, f"mode: must be one of {GROUND_MODES}, got {row['mode']!r}")
        key = (row["tail_node"], row["head_node"], row["mode"])
        if key in surface:
            raise sheet.fail(line, f"duplicate surface record {key}")
        for end, label in (key[0], "tail_node"), (key[1], "head_node"):
            if end not in node_ids:
                raise sheet.fail(line, f"{label}: unknown node {end!r}")
        surface[key] = SurfaceTime(
            tail_node=key[0],
            head_node=key[1],
            mode=row["mode"],
            time_min=_parse_float(sheet, line, "time_min", row["time_min"], minimum=0.0, strict=True),
        )

    rates: dict[str, float] = {}
    sheet = sheets["state_rates.csv"]
    for line, row in sheet.rows:
        state = row["state"]
        if state in rates:
            raise sheet.fail(line, f"duplicate state rate for {state!r}")
        rates[state] = _parse_float(
            sheet, line, "abortions_per_1000_women", row["abortions_per_1000_women"], minimum=0.0
        )

    seen_coords: dict[tuple[float, float], str] = {}
    for aid in sorted(airports):
        coords = (airports[aid].latitude, airports[aid].longitude)
        if coords in seen_coords:
            warnings.append(
                f"airports {seen_coords[coords]} and {aid} share identical coordinates"
            )
        else:
            seen_coords[coords] = aid

    return ReferenceData(
        counties=counties,
        airports=airports,
        clinics=clinics,
        flights=flights,
        surface_times=surface,
        state_rates=rates,
        warnings=tuple(warnings),
    )


def save_datasets(data: ReferenceData, root: str | Path) -> None:
    """Write a bundle back to the six-CSV layout (used by fixture tooling)."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)

    def write(name: str, columns: list[str], rows: list[list]) -> None:
        with (root / name).open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            writer.writerows(rows)

    write(
        "counties.csv",
        COUNTY_COLUMNS,
        [
            [c.id, c.state, c.name, repr(c.latitude), repr(c.longitude), c.eligible_population]
            for c in data.counties.values()
        ],
    )
    write(
        "airports.csv",
        AIRPORT_COLUMNS,
        [
            [a.id, a.kind, a.state, a.county_id, repr(a.latitude), repr(a.longitude)]
            for a in data.airports.values()
        ],
    )
    write(
        "clinics.csv",
        CLINIC_COLUMNS,
        [
            [c.id, c.name, c.state, c.county_id, repr(c.latitude), repr(c.longitude), c.capacity_per_day]
            for c in data.clinics.values()
        ],
    )
    write(
        "flights.csv",
        FLIGHT_COLUMNS,
        [
            [f.origin_airport, f.dest_airport, f.seats, repr(f.avg_fare), repr(f.avg_time_min)]
            for f in data.flights.values()
        ],
    )
    write(
        "surface_times.csv",
        SURFACE_COLUMNS,
        [
            [s.tail_node, s.head_node, s.mode, repr(s.time_min)]
            for s in data.surface_times.values()
        ],
    )
    write(
        "state_rates.csv",
        RATE_COLUMNS,
        [[state, repr(rate)] for state, rate in data.state_rates.items()],
    )


def haversine_miles(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Great-circle distance in statute miles."""
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = phi2 - phi1
    dlam = math.radians(lon2 - lon1)
    h = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2) ** 2
    return 2 * EARTH_RADIUS_MILES * math.asin(min(1.0, math.sqrt(h)))


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def ga_flight_time(origin: Airport, dest: Airport) -> int:
    """Small-aircraft travel time in whole minutes at 130 mph over the great circle."""
    miles = haversine_miles(origin.latitude, origin.longitude, dest.latitude, dest.longitude)
    if miles == 0.0 and origin.id != dest.id:
        log.warning(
            "airports %s and %s share coordinates; zero-minute flight", origin.id, dest.id
        )
    return round_half_up(miles / GA_CRUISE_MPH * 60.0)
