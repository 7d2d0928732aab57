"""One-stop orchestration: scenario + data in, solved plan out."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import ilp
from .analytics import PlanReport, build_plan_report, total_transported
from .dataio import ReferenceData
from .formulation import (
    MAX_FLOW,
    MIN_COST,
    VariableCatalog,
    build_max_flow,
    build_min_cost,
)
from .model import Network, Scenario
from .network import build_network

MODELS = (MAX_FLOW, MIN_COST)


@dataclass(frozen=True)
class ModelRun:
    """Everything produced by solving one model for one scenario."""

    model: str
    status: str  # optimal | infeasible
    report: PlanReport | None
    solution: ilp.Solution
    ip: ilp.IntegerProgram
    catalog: VariableCatalog
    network: Network
    solve_ms: float
    #: For an infeasible min-cost run: how much demand was actually movable.
    diagnostic: dict | None = None


def run_model(
    scenario: Scenario,
    data: ReferenceData,
    model: str,
    time_limit_s: float | None = None,
    node_limit: int = ilp.branch_bound.DEFAULT_NODE_LIMIT,
    network: Network | None = None,
) -> ModelRun:
    """Build, formulate, and solve one model; never returns a silent suboptimum."""
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    started = time.monotonic()
    net = network if network is not None else build_network(scenario, data)
    build = build_max_flow if model == MAX_FLOW else build_min_cost
    ip, catalog = build(net, scenario)

    if model == MIN_COST and net.demand_total > 0 and not net.clinics:
        # No clinic rows exist to carry the demand equality; fail explicitly.
        solution = ilp.Solution(status=ilp.INFEASIBLE, infeasible_hint="c1")
    else:
        solution = ilp.solve(ip, node_limit=node_limit, time_limit_s=time_limit_s)

    solve_ms = (time.monotonic() - started) * 1000.0
    diagnostic = None
    report = None
    if solution.status == ilp.OPTIMAL:
        report = build_plan_report(solution, ip, catalog, net, scenario)
    elif model == MIN_COST:
        flow_run = run_model(
            scenario, data, MAX_FLOW, time_limit_s=time_limit_s, node_limit=node_limit, network=net
        )
        diagnostic = {
            "max_flow_total": flow_run.report.total_transported
            if flow_run.report
            else 0,
            "demand_total": net.demand_total,
        }
    status = "optimal" if solution.status == ilp.OPTIMAL else "infeasible"
    return ModelRun(
        model=model,
        status=status,
        report=report,
        solution=solution,
        ip=ip,
        catalog=catalog,
        network=net,
        solve_ms=solve_ms,
        diagnostic=diagnostic,
    )
