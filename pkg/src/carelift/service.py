"""HTTP facade: reference data, scenario store, synchronous solves.

In-memory store only; an optional JSON snapshot is written on shutdown.
Solves run on a fixed-size worker pool (FIFO queue) with a wall-clock limit;
hitting the limit is a 409, never a silently truncated answer.
"""

from __future__ import annotations

import argparse
import json
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from contextlib import asynccontextmanager
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import uvicorn
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .analytics import report_to_dict
from .dataio import ReferenceData, load_datasets
from .errors import ValidationError
from .ilp import ResourceLimitError
from .model import Scenario, scenario_from_dict, scenario_to_dict
from .planner import MODELS, run_model

DEFAULT_SOLVE_TIMEOUT_S = 60.0

REFERENCE_KINDS = ("states", "counties", "airports", "clinics")


@dataclass(frozen=True)
class StoredScenario:
    id: str
    scenario: Scenario
    created_at: str


@dataclass(frozen=True)
class StoredSolution:
    id: str
    scenario_id: str
    model: str
    status: str
    payload: str  # exact JSON body returned to clients


class Store:
    """Thread-safe append-only store for scenarios and solutions."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._scenarios: dict[str, StoredScenario] = {}
        self._solutions: dict[str, StoredSolution] = {}
        self._n_scenarios = 0
        self._n_solutions = 0

    def add_scenario(self, scenario: Scenario) -> StoredScenario:
        with self._lock:
            self._n_scenarios += 1
            stored = StoredScenario(
                id=f"scn-{self._n_scenarios:06d}",
                scenario=scenario,
                created_at=_now(),
            )
            self._scenarios[stored.id] = stored
            return stored

    def scenario(self, scenario_id: str) -> StoredScenario | None:
        with self._lock:
            return self._scenarios.get(scenario_id)

    def next_solution_id(self) -> str:
        with self._lock:
            self._n_solutions += 1
            return f"sol-{self._n_solutions:06d}"

    def add_solution(self, stored: StoredSolution) -> None:
        with self._lock:
            self._solutions[stored.id] = stored

    def solution(self, solution_id: str) -> StoredSolution | None:
        with self._lock:
            return self._solutions.get(solution_id)

    def snapshot(self) -> dict:
        with self._lock:
            return {
                "scenarios": [
                    {
                        "id": s.id,
                        "created_at": s.created_at,
                        "scenario": scenario_to_dict(s.scenario),
                    }
                    for s in self._scenarios.values()
                ],
                "solutions": [json.loads(s.payload) for s in self._solutions.values()],
            }


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _error(status: int, code: str, message: str, details: list | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "details": details or []},
    )


def validate_against_data(scenario: Scenario, data: ReferenceData) -> JSONResponse | None:
    """Existence checks that need the dataset; None when everything resolves."""
    states = data.states()
    missing_states = [
        s for s in (scenario.origin_state, scenario.destination_state) if s not in states
    ]
    if missing_states:
        return _error(
            404,
            "state_not_found",
            "unknown state(s)",
            [{"field": "states", "message": f"unknown state {s!r}"} for s in missing_states],
        )
    unknown_clinics = sorted(c for c in scenario.open_clinic_ids if c not in data.clinics)
    if unknown_clinics:
        return _error(
            404,
            "clinic_not_found",
            "unknown clinic id(s)",
            [
                {"field": "open_clinic_ids", "message": f"unknown clinic {c!r}"}
                for c in unknown_clinics
            ],
        )
    details = []
    for cid in sorted(scenario.open_clinic_ids):
        clinic = data.clinics[cid]
        if clinic.state != scenario.destination_state:
            details.append(
                {
                    "field": "open_clinic_ids",
                    "message": f"clinic {cid!r} is in {clinic.state}, not {scenario.destination_state}",
                }
            )
    for field_name, state in (
        ("origin_drivers", scenario.origin_state),
        ("destination_drivers", scenario.destination_state),
        ("demand_overrides", scenario.origin_state),
    ):
        for county_id in sorted(getattr(scenario, field_name)):
            county = data.counties.get(county_id)
            if county is None or county.state != state:
                details.append(
                    {
                        "field": field_name,
                        "message": f"county {county_id!r} is not a known {state} county",
                    }
                )
    if details:
        return _error(400, "invalid_scenario", "scenario references bad data", details)
    return None


def create_app(
    data_root: str | Path,
    solve_timeout_s: float = DEFAULT_SOLVE_TIMEOUT_S,
    max_concurrent_solves: int | None = None,
    snapshot_path: str | Path | None = None,
    ui_dist: str | Path | None = None,
) -> FastAPI:
    data = load_datasets(data_root)
    store = Store()
    workers = max_concurrent_solves or os.cpu_count() or 2
    executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="solve")

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        executor.shutdown(wait=False)
        if snapshot_path:
            Path(snapshot_path).write_text(
                json.dumps(store.snapshot(), indent=2), encoding="utf-8"
            )

    app = FastAPI(title="carelift planner", version="0.1.0", lifespan=lifespan)
    app.state.data = data
    app.state.store = store

    @app.get("/api/health")
    def health() -> dict:
        return {
            "status": "ok",
            "states": sorted(data.states()),
            "counties": len(data.counties),
            "clinics": len(data.clinics),
        }

    @app.get("/api/reference/{kind}")
    def reference(kind: str, state: str | None = None):
        if kind not in REFERENCE_KINDS:
            return _error(404, "unknown_kind", f"unknown reference kind {kind!r}")
        if kind == "states":
            rows = [
                {
                    "code": code,
                    "counties": sum(1 for c in data.counties.values() if c.state == code),
                    "airports": sum(1 for a in data.airports.values() if a.state == code),
                    "clinics": sum(1 for c in data.clinics.values() if c.state == code),
                }
                for code in sorted(data.states())
            ]
            return {"rows": rows}
        if kind == "counties":
            pool = [
                {
                    "id": c.id,
                    "name": c.name,
                    "state": c.state,
                    "latitude": c.latitude,
                    "longitude": c.longitude,
                    "eligible_population": c.eligible_population,
                }
                for c in data.counties.values()
                if state is None or c.state == state
            ]
        elif kind == "airports":
            pool = [
                {
                    "id": a.id,
                    "kind": a.kind,
                    "state": a.state,
                    "county_id": a.county_id,
                    "latitude": a.latitude,
                    "longitude": a.longitude,
                }
                for a in data.airports.values()
                if state is None or a.state == state
            ]
        else:
            pool = [
                {
                    "id": c.id,
                    "name": c.name,
                    "state": c.state,
                    "county_id": c.county_id,
                    "latitude": c.latitude,
                    "longitude": c.longitude,
                    "capacity_per_day": c.capacity_per_day,
                }
                for c in data.clinics.values()
                if state is None or c.state == state
            ]
        return {"rows": sorted(pool, key=lambda r: r["id"])}

    @app.post("/api/scenarios", status_code=201)
    async def create_scenario(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError:
            return _error(400, "bad_json", "request body is not valid JSON")
        try:
            scenario = scenario_from_dict(body)
        except ValidationError as exc:
            return _error(400, "invalid_scenario", str(exc), exc.details)
        failure = validate_against_data(scenario, data)
        if failure is not None:
            return failure
        stored = store.add_scenario(scenario)
        return JSONResponse(
            status_code=201,
            content={
                "id": stored.id,
                "created_at": stored.created_at,
                "scenario": scenario_to_dict(scenario),
            },
        )

    @app.post("/api/scenarios/{scenario_id}/solve")
    def solve_scenario(scenario_id: str, model: str = "max_flow"):
        if model not in MODELS:
            return _error(400, "unknown_model", f"model must be one of {MODELS}")
        stored = store.scenario(scenario_id)
        if stored is None:
            return _error(404, "scenario_not_found", f"no scenario {scenario_id!r}")
        try:
            run = executor.submit(
                run_model, stored.scenario, data, model, solve_timeout_s
            ).result()
        except ResourceLimitError as exc:
            return _error(409, "solver_resource_limit", str(exc))
        solution_id = store.next_solution_id()
        body = {
            "id": solution_id,
            "scenario_id": scenario_id,
            "model": model,
            "status": run.status,
            "objective": run.solution.objective if run.status == "optimal" else None,
            "report": report_to_dict(run.report) if run.report else None,
            "diagnostic": run.diagnostic,
            "solved_at": _now(),
            "solve_ms": round(run.solve_ms, 3),
        }
        payload = json.dumps(body, separators=(",", ":"), sort_keys=False)
        store.add_solution(
            StoredSolution(
                id=solution_id,
                scenario_id=scenario_id,
                model=model,
                status=run.status,
                payload=payload,
            )
        )
        if run.status == "infeasible" and model == "min_cost":
            details = [dict(run.diagnostic or {}, solution_id=solution_id)]
            return _error(
                422,
                "min_cost_infeasible",
                "demand cannot be fully satisfied with these resources",
                details,
            )
        return Response(content=payload, media_type="application/json")

    @app.get("/api/solutions/{solution_id}")
    def get_solution(solution_id: str):
        stored = store.solution(solution_id)
        if stored is None:
            return _error(404, "solution_not_found", f"no solution {solution_id!r}")
        return Response(content=stored.payload, media_type="application/json")

    if ui_dist:
        app.mount("/", StaticFiles(directory=str(ui_dist), html=True), name="ui")

    return app


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(description="Run the planning HTTP service.")
    parser.add_argument("--data-root", required=True, help="directory with the reference CSVs")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=int(os.environ.get("PORT", "8080")))
    parser.add_argument("--solve-timeout-s", type=float, default=DEFAULT_SOLVE_TIMEOUT_S)
    parser.add_argument("--max-concurrent-solves", type=int, default=None)
    parser.add_argument("--snapshot", default=None, help="write a JSON snapshot here on shutdown")
    parser.add_argument("--ui-dist", default=None, help="serve this directory as the web UI")
    args = parser.parse_args(argv)
    app = create_app(
        args.data_root,
        solve_timeout_s=args.solve_timeout_s,
        max_concurrent_solves=args.max_concurrent_solves,
        snapshot_path=args.snapshot,
        ui_dist=args.ui_dist,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
