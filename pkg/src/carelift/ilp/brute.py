"""Exhaustive enumeration oracle for small integer programs.

Walks every integer point of the variable box in lexicographic order
(depth-first, values ascending), skipping subtrees only when interval
arithmetic over the unassigned suffix proves no completion can satisfy a
constraint.  No LP machinery is involved, which keeps this an independent
check on the branch-and-bound solver.

Ties on the objective keep the first point found, i.e. the
lexicographically smallest optimal assignment.
"""

from __future__ import annotations

import math

from .program import (
    EQ,
    GE,
    INFEASIBLE,
    LE,
    MAXIMIZE,
    OPTIMAL,
    IntegerProgram,
    Solution,
    compute_slacks,
)

DEFAULT_MAX_BOX = 10_000_000
_TIE_TOL = 1e-9


class SearchSpaceLimitError(ValueError):
    """The variable box is too large (or unbounded) to enumerate."""


def brute_force_solve(ip: IntegerProgram, max_box: int = DEFAULT_MAX_BOX) -> Solution:
    """Enumerate every in-bounds integer assignment and return the best feasible one."""
    box = ip.search_box_size()
    if box > max_box:
        raise SearchSpaceLimitError(
            f"search space has {box:.4g} assignments over {len(ip.variables)} "
            f"variables, above the limit of {max_box:.4g}"
        )

    n = len(ip.variables)
    names = [v.name for v in ip.variables]
    lower = [v.lower for v in ip.variables]
    upper = [v.upper for v in ip.variables]
    index = {name: j for j, name in enumerate(names)}

    m = len(ip.constraints)
    relations = [con.relation for con in ip.constraints]
    rhs = [con.rhs for con in ip.constraints]
    coeff_rows: list[list[tuple[int, float]]] = [
        sorted((index[v], a) for v, a in con.coefficients.items() if a != 0)
        for con in ip.constraints
    ]
    touched: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for k, row in enumerate(coeff_rows):
        for j, a in row:
            touched[j].append((k, a))

    # suffix_min/max[k][d] bound the contribution of variables d..n-1 to row k.
    suffix_min = [[0.0] * (n + 1) for _ in range(m)]
    suffix_max = [[0.0] * (n + 1) for _ in range(m)]
    for k, row in enumerate(coeff_rows):
        per_var_min = [0.0] * n
        per_var_max = [0.0] * n
        for j, a in row:
            lo, hi = a * lower[j], a * upper[j]
            per_var_min[j], per_var_max[j] = min(lo, hi), max(lo, hi)
        for d in range(n - 1, -1, -1):
            suffix_min[k][d] = suffix_min[k][d + 1] + per_var_min[d]
            suffix_max[k][d] = suffix_max[k][d + 1] + per_var_max[d]

    def completable(k: int, depth: int, partial: float) -> bool:
        lo = partial + suffix_min[k][depth]
        hi = partial + suffix_max[k][depth]
        if relations[k] == LE:
            return lo <= rhs[k] + _TIE_TOL
        if relations[k] == GE:
            return hi >= rhs[k] - _TIE_TOL
        return lo <= rhs[k] + _TIE_TOL and hi >= rhs[k] - _TIE_TOL

    partial = [0.0] * m
    if not all(completable(k, 0, 0.0) for k in range(m)):
        return Solution(status=INFEASIBLE)

    obj_coeff = [ip.objective.get(name, 0.0) for name in names]
    maximize = ip.sense == MAXIMIZE
    best_obj = -math.inf if maximize else math.inf
    best: list[int] | None = None
    x = [0] * n

    def walk(depth: int, obj: float) -> None:
        nonlocal best, best_obj
        if depth == n:
            if (obj > best_obj + _TIE_TOL) if maximize else (obj < best_obj - _TIE_TOL):
                best_obj = obj
                best = x.copy()
            return
        cj = obj_coeff[depth]
        rows = touched[depth]
        base = [partial[k] for k, _ in rows]
        for v in range(lower[depth], upper[depth] + 1):
            x[depth] = v
            ok = True
            for slot, (k, a) in enumerate(rows):
                partial[k] = base[slot] + a * v
                if ok and not completable(k, depth + 1, partial[k]):
                    ok = False
            if ok:
                walk(depth + 1, obj + cj * v)
        for slot, (k, _) in enumerate(rows):
            partial[k] = base[slot]

    walk(0, 0.0)
    if best is None:
        return Solution(status=INFEASIBLE)
    values = {name: best[j] for j, name in enumerate(names)}
    return Solution(
        status=OPTIMAL,
        values=values,
        objective=float(ip.objective_value(values)),
        slacks=compute_slacks(ip, values),
    )
