"""Bounded pure-integer linear programs: problem and solution records.

An :class:`IntegerProgram` is a plain declarative container: named integer
variables with box bounds, linear constraints with labels, and one linear
objective.  Solvers live in :mod:`carelift.ilp.branch_bound` and
:mod:`carelift.ilp.brute`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

MAXIMIZE = "maximize"
MINIMIZE = "minimize"

LE = "<="
EQ = "="
GE = ">="

_RELATIONS = (LE, EQ, GE)

#: Statuses a solve can end in.
OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class IllFormedProgramError(ValueError):
    """The program violates a structural invariant (bad bounds, unknown var...)."""


@dataclass(frozen=True)
class Variable:
    """Integer decision variable with a box bound; ``upper=None`` means +inf."""

    name: str
    lower: int = 0
    upper: int | None = None

    def __post_init__(self) -> None:
        if self.lower < 0:
            raise IllFormedProgramError(f"{self.name}: lower bound must be >= 0")
        if self.upper is not None and self.upper < self.lower:
            raise IllFormedProgramError(
                f"{self.name}: upper {self.upper} < lower {self.lower}"
            )


@dataclass(frozen=True)
class LinearConstraint:
    """One linear row ``sum(coefficients) <relation> rhs``."""

    label: str
    coefficients: dict[str, float]
    relation: str
    rhs: float

    def __post_init__(self) -> None:
        if self.relation not in _RELATIONS:
            raise IllFormedProgramError(f"{self.label}: bad relation {self.relation!r}")
        if not any(c != 0 for c in self.coefficients.values()):
            raise IllFormedProgramError(f"{self.label}: no nonzero coefficient")

    def lhs(self, values: dict[str, int | float]) -> float:
        return sum(a * values[v] for v, a in self.coefficients.items())

    def slack(self, values: dict[str, int | float]) -> float:
        """rhs - lhs for <=, lhs - rhs for >=, 0 for a satisfied equality."""
        if self.relation == LE:
            return self.rhs - self.lhs(values)
        if self.relation == GE:
            return self.lhs(values) - self.rhs
        return 0.0


@dataclass(frozen=True)
class IntegerProgram:
    """A bounded pure-integer linear program."""

    variables: tuple[Variable, ...]
    constraints: tuple[LinearConstraint, ...]
    objective: dict[str, float]
    sense: str = MAXIMIZE

    def __post_init__(self) -> None:
        if self.sense not in (MAXIMIZE, MINIMIZE):
            raise IllFormedProgramError(f"bad sense {self.sense!r}")
        names = [v.name for v in self.variables]
        declared = set(names)
        if len(declared) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise IllFormedProgramError(f"duplicate variables: {dupes}")
        for con in self.constraints:
            unknown = sorted(set(con.coefficients) - declared)
            if unknown:
                raise IllFormedProgramError(f"{con.label}: unknown variables {unknown}")
        unknown = sorted(set(self.objective) - declared)
        if unknown:
            raise IllFormedProgramError(f"objective: unknown variables {unknown}")

    def index(self) -> dict[str, int]:
        return {v.name: i for i, v in enumerate(self.variables)}

    def objective_value(self, values: dict[str, int | float]) -> float:
        return sum(c * values[v] for v, c in self.objective.items())

    def search_box_size(self) -> float:
        """Product of (upper - lower + 1); inf when any variable is unbounded."""
        size = 1.0
        for v in self.variables:
            if v.upper is None:
                return math.inf
            size *= v.upper - v.lower + 1
        return size


@dataclass(frozen=True)
class SolveStats:
    """Diagnostics attached to an exact solve."""

    nodes: int = 0
    lp_iterations: int = 0
    root_bound: float | None = None
    wall_ms: float = 0.0


@dataclass(frozen=True)
class Solution:
    """Outcome of a solve; values are integral and complete when optimal."""

    status: str
    values: dict[str, int] = field(default_factory=dict)
    objective: float = 0.0
    slacks: dict[str, float] = field(default_factory=dict)
    infeasible_hint: str | None = None
    stats: SolveStats | None = None


@dataclass(frozen=True)
class Violation:
    """One broken constraint, bound, or integrality requirement."""

    label: str
    kind: str  # "constraint" | "bound" | "integrality"
    lhs: float
    rhs: float

    def __str__(self) -> str:
        return f"{self.kind} {self.label}: lhs={self.lhs} vs rhs={self.rhs}"


def compute_slacks(ip: IntegerProgram, values: dict[str, int]) -> dict[str, float]:
    return {con.label: con.slack(values) for con in ip.constraints}


def validate_solution(
    ip: IntegerProgram, sol: Solution, tol: float = 1e-9
) -> list[Violation]:
    """Check an optimal solution against every constraint, bound, and integrality.

    Returns an empty list iff everything holds within ``tol``.
    """
    out: list[Violation] = []
    for var in ip.variables:
        if var.name not in sol.values:
            out.append(Violation(var.name, "bound", math.nan, var.lower))
            continue
        val = sol.values[var.name]
        if val != int(val):
            out.append(Violation(var.name, "integrality", val, round(val)))
        if val < var.lower:
            out.append(Violation(var.name, "bound", val, var.lower))
        if var.upper is not None and val > var.upper:
            out.append(Violation(var.name, "bound", val, var.upper))
    for con in ip.constraints:
        lhs = con.lhs(sol.values)
        ok = (
            lhs <= con.rhs + tol
            if con.relation == LE
            else lhs >= con.rhs - tol
            if con.relation == GE
            else abs(lhs - con.rhs) <= tol
        )
        if not ok:
            out.append(Violation(con.label, "constraint", lhs, con.rhs))
    return out


def _fmt_coeff(value: float, first: bool) -> str:
    sign = "-" if value < 0 else ("" if first else "+")
    mag = abs(value)
    body = f"{mag:g}"
    return f"{sign} {body}" if not first else f"{sign}{body}"


def to_lp_text(ip: IntegerProgram) -> str:
    """Render the program as plain text for offline inspection.

    Grammar (one statement per line, ``;``-terminated):

        maximize: <coeff> <var> [+|- <coeff> <var> ...];
        <label>: <coeff> <var> ... <=|=|>= <rhs>;
        bounds: <lower> <= <var> [<= <upper>];   (one per variable)
        integers: <var> <var> ...;               (always all variables)
    """
    lines = []
    terms = " ".join(
        f"{_fmt_coeff(c, i == 0)} {v}"
        for i, (v, c) in enumerate(ip.objective.items())
        if c != 0
    )
    lines.append(f"{ip.sense}: {terms or '0'};")
    for con in ip.constraints:
        terms = " ".join(
            f"{_fmt_coeff(c, i == 0)} {v}"
            for i, (v, c) in enumerate(con.coefficients.items())
            if c != 0
        )
        lines.append(f"{con.label}: {terms} {con.relation} {con.rhs:g};")
    for var in ip.variables:
        if var.upper is None:
            lines.append(f"bounds: {var.lower} <= {var.name};")
        else:
            lines.append(f"bounds: {var.lower} <= {var.name} <= {var.upper};")
    lines.append("integers: " + " ".join(v.name for v in ip.variables) + ";")
    return "\n".join(lines) + "\n"
