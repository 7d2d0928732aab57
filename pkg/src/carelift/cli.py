"""Headless batch driver: read a scenario file, solve, emit reports.

Exit codes: 0 success, 1 data or validation problems, 2 min-cost demand
cannot be satisfied (the max-flow diagnostic is still emitted).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analytics import report_to_dict
from .dataio import load_datasets
from .errors import CareliftError
from .formulation import MAX_FLOW, MIN_COST
from .ilp import ResourceLimitError
from .model import scenario_from_dict
from .planner import run_model

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNSATISFIED = 2


def _model_entry(run) -> dict:
    entry: dict = {"status": run.status}
    if run.status == "optimal":
        entry["objective"] = run.solution.objective
        entry["report"] = report_to_dict(run.report)
    else:
        entry["diagnostic"] = run.diagnostic
    return entry


def _render_table(results: dict) -> str:
    lines = []
    for model, entry in results.items():
        lines.append(f"== {model} ==")
        if entry["status"] != "optimal":
            lines.append(f"status               {entry['status']}")
            diag = entry.get("diagnostic") or {}
            for key, value in diag.items():
                lines.append(f"{key:<20} {value}")
            lines.append("")
            continue
        report = entry["report"]
        lines.append(f"{'total_transported':<20} {report['total_transported']}")
        lines.append(f"{'demand_total':<20} {report['demand_total']}")
        lines.append(f"{'satisfaction':<20} {report['satisfaction']:.2%}")
        split = report["modal_split"]
        lines.append(
            f"{'modal_split':<20} commercial={split['commercial']} "
            f"general_aviation={split['general_aviation']} direct={split['direct']}"
        )
        spend = report["spend"]
        lines.append(
            f"{'spend':<20} fares=${spend['fares']} ride_hail=${spend['ride_hail']} "
            f"total=${spend['total']}"
        )
        excess = report["excess"]
        lines.append(f"{'budget_unused':<20} ${excess['budget_unused']}")
        lines.append(f"{'ga_seats_unused':<20} {excess['ga_seats_unused']}")
        lines.append(f"{'ga_aircraft_unused':<20} {excess['ga_aircraft_unused']}")
        for label in (
            "origin_vehicles_unused",
            "destination_vehicles_unused",
            "commercial_seats_unused",
            "clinic_capacity_unused",
        ):
            pairs = " ".join(f"{k}={v}" for k, v in excess[label].items()) or "-"
            lines.append(f"{label:<28} {pairs}")
        for label in ("per_county", "per_clinic"):
            pairs = " ".join(f"{k}={v}" for k, v in report[label].items()) or "-"
            lines.append(f"{label:<20} {pairs}")
        lines.append("")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="Solve a day plan from files.")
    parser.add_argument("--data-root", required=True)
    parser.add_argument("--scenario", required=True, help="scenario JSON file")
    parser.add_argument(
        "--model", choices=[MAX_FLOW, MIN_COST, "both"], default="both"
    )
    parser.add_argument("--out", default="-", help="output path, - for stdout")
    parser.add_argument("--format", choices=["json", "table"], default="json")
    args = parser.parse_args(argv)

    try:
        data = load_datasets(args.data_root)
        payload = json.loads(Path(args.scenario).read_text(encoding="utf-8"))
        scenario = scenario_from_dict(payload)
    except (OSError, json.JSONDecodeError, CareliftError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    models = [MAX_FLOW, MIN_COST] if args.model == "both" else [args.model]
    results: dict[str, dict] = {}
    exit_code = EXIT_OK
    try:
        for model in models:
            if model == MIN_COST and MAX_FLOW in results:
                flow = results[MAX_FLOW]
                if (
                    flow["status"] == "optimal"
                    and flow["report"]["total_transported"]
                    < flow["report"]["demand_total"]
                ):
                    # A guaranteed-infeasible solve; skip it but say why.
                    print(
                        "notice: demand exceeds movable flow; skipping min_cost",
                        file=sys.stderr,
                    )
                    results[MIN_COST] = {
                        "status": "infeasible",
                        "skipped": True,
                        "diagnostic": {
                            "max_flow_total": flow["report"]["total_transported"],
                            "demand_total": flow["report"]["demand_total"],
                        },
                    }
                    exit_code = EXIT_UNSATISFIED
                    continue
            run = run_model(scenario, data, model)
            results[model] = _model_entry(run)
            if run.status != "optimal" and model == MIN_COST:
                exit_code = EXIT_UNSATISFIED
    except CareliftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimitError as exc:
        print(f"error: solver resource limit: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if args.format == "json":
        text = json.dumps(results, indent=2, sort_keys=False) + "\n"
    else:
        text = _render_table(results)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
