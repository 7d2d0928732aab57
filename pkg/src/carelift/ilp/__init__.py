"""Exact solving of bounded pure-integer linear programs."""

from .branch_bound import ResourceLimitError, solve
from .brute import SearchSpaceLimitError, brute_force_solve
from .program import (
    EQ,
    GE,
    INFEASIBLE,
    LE,
    MAXIMIZE,
    MINIMIZE,
    OPTIMAL,
    UNBOUNDED,
    IllFormedProgramError,
    IntegerProgram,
    LinearConstraint,
    Solution,
    SolveStats,
    Variable,
    Violation,
    compute_slacks,
    to_lp_text,
    validate_solution,
)
from .simplex import SimplexError, solve_lp

__all__ = [
    "EQ",
    "GE",
    "INFEASIBLE",
    "LE",
    "MAXIMIZE",
    "MINIMIZE",
    "OPTIMAL",
    "UNBOUNDED",
    "IllFormedProgramError",
    "IntegerProgram",
    "LinearConstraint",
    "ResourceLimitError",
    "SearchSpaceLimitError",
    "SimplexError",
    "Solution",
    "SolveStats",
    "Variable",
    "Violation",
    "brute_force_solve",
    "compute_slacks",
    "solve",
    "solve_lp",
    "to_lp_text",
    "validate_solution",
]
