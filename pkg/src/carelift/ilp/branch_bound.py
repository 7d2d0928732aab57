"""Exact branch-and-bound over LP relaxations for bounded integer programs.

Strategy, fixed for reproducibility:

* best-first node selection keyed on the parent relaxation bound,
* branch on the variable whose relaxed value is farthest from an integer,
  ties broken by lowest variable index,
* children split as ``x <= floor(v)`` / ``x >= ceil(v)`` (bound tightening,
  never new rows).

Hitting the node or wall-clock limit raises :class:`ResourceLimitError`;
a suboptimal answer is never returned silently.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time

import numpy as np

from . import simplex
from .program import (
    INFEASIBLE,
    MAXIMIZE,
    OPTIMAL,
    UNBOUNDED,
    IntegerProgram,
    Solution,
    SolveStats,
    compute_slacks,
)

#: Relaxed values closer than this to an integer count as integral.
INTEGRALITY_TOL = 1e-6
#: Nodes whose bound is within this of the incumbent cannot improve it.
BOUND_TOL = 1e-7

DEFAULT_NODE_LIMIT = 1_000_000


class ResourceLimitError(RuntimeError):
    """Node or time budget exhausted before optimality was proven."""

    def __init__(self, message: str, nodes: int, elapsed_s: float):
        super().__init__(message)
        self.nodes = nodes
        self.elapsed_s = elapsed_s


class _Matrices:
    """Dense snapshot of an IntegerProgram for repeated LP solves."""

    def __init__(self, ip: IntegerProgram):
        self.names = [v.name for v in ip.variables]
        index = {name: j for j, name in enumerate(self.names)}
        n = len(self.names)
        m = len(ip.constraints)
        self.a = np.zeros((m, n))
        self.relations = [con.relation for con in ip.constraints]
        self.b = np.zeros(m)
        for i, con in enumerate(ip.constraints):
            for name, coeff in con.coefficients.items():
                self.a[i, index[name]] = coeff
            self.b[i] = con.rhs
        self.c = np.zeros(n)
        for name, coeff in ip.objective.items():
            self.c[index[name]] = coeff
        self.lower = np.array([float(v.lower) for v in ip.variables])
        self.upper = np.array(
            [math.inf if v.upper is None else float(v.upper) for v in ip.variables]
        )


def solve(
    ip: IntegerProgram,
    node_limit: int = DEFAULT_NODE_LIMIT,
    time_limit_s: float | None = None,
) -> Solution:
    """Solve to proven optimality; deterministic for a fixed program."""
    started = time.monotonic()
    mats = _Matrices(ip)
    maximize = ip.sense == MAXIMIZE
    lp_iterations = 0
    counter = itertools.count()

    def relax(lower: np.ndarray, upper: np.ndarray) -> simplex.LPResult:
        return simplex.solve_lp(
            mats.a, mats.relations, mats.b, mats.c, lower, upper, maximize=maximize
        )

    root = relax(mats.lower, mats.upper)
    lp_iterations += root.iterations
    if root.status == INFEASIBLE:
        hint = ip.constraints[root.bad_row].label if root.bad_row is not None else None
        return Solution(
            status=INFEASIBLE,
            infeasible_hint=hint,
            stats=SolveStats(1, lp_iterations, None, _ms(started)),
        )
    if root.status == UNBOUNDED:
        return Solution(
            status=UNBOUNDED, stats=SolveStats(1, lp_iterations, None, _ms(started))
        )
    root_bound = root.objective

    sign = -1.0 if maximize else 1.0  # heap is a min-heap on sign*bound
    incumbent: np.ndarray | None = None
    incumbent_obj = -math.inf if maximize else math.inf
    heap: list[tuple[float, int, simplex.LPResult, np.ndarray, np.ndarray]] = []
    heapq.heappush(
        heap, (sign * root.objective, next(counter), root, mats.lower, mats.upper)
    )
    nodes = 0

    def better(candidate: float, reference: float) -> bool:
        return candidate > reference + BOUND_TOL if maximize else candidate < reference - BOUND_TOL

    while heap:
        nodes += 1
        if nodes > node_limit:
            raise ResourceLimitError(
                f"node limit {node_limit} reached", nodes, time.monotonic() - started
            )
        if time_limit_s is not None and time.monotonic() - started > time_limit_s:
            raise ResourceLimitError(
                f"time limit {time_limit_s}s reached", nodes, time.monotonic() - started
            )
        _, _, res, lower, upper = heapq.heappop(heap)
        if incumbent is not None and not better(res.objective, incumbent_obj):
            continue  # best-first: nothing left can improve either

        x = res.x
        frac = np.abs(x - np.round(x))
        if float(frac.max(initial=0.0)) <= INTEGRALITY_TOL:
            candidate = np.round(x).astype(np.int64)
            value = float(mats.c @ candidate)
            if incumbent is None or better(value, incumbent_obj):
                incumbent, incumbent_obj = candidate, value
            continue

        j = int(np.argmax(np.minimum(frac, 1.0 - frac)))  # ties: lowest index
        split = x[j]
        down_upper = upper.copy()
        down_upper[j] = math.floor(split)
        up_lower = lower.copy()
        up_lower[j] = math.ceil(split)
        for child_lower, child_upper in ((lower, down_upper), (up_lower, upper)):
            child = relax(child_lower, child_upper)
            lp_iterations += child.iterations
            if child.status != OPTIMAL:
                continue
            if incumbent is not None and not better(child.objective, incumbent_obj):
                continue
            heapq.heappush(
                heap,
                (sign * child.objective, next(counter), child, child_lower, child_upper),
            )

    if incumbent is None:
        return Solution(
            status=INFEASIBLE,
            stats=SolveStats(nodes, lp_iterations, root_bound, _ms(started)),
        )
    values = {name: int(incumbent[j]) for j, name in enumerate(mats.names)}
    return Solution(
        status=OPTIMAL,
        values=values,
        objective=float(ip.objective_value(values)),
        slacks=compute_slacks(ip, values),
        stats=SolveStats(nodes, lp_iterations, root_bound, _ms(started)),
    )


def _ms(started: float) -> float:
    return (time.monotonic() - started) * 1000.0
