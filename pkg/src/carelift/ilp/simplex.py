"""Two-phase primal simplex for LPs with box-bounded variables.

The relaxations produced by branch-and-bound carry per-variable lower and
upper bounds that change at every node, so bounds are handled natively
(nonbasic variables sit at either bound) instead of being rewritten as rows.

Pivoting uses Dantzig's rule and falls back to Bland's rule after a fixed
number of iterations, which guarantees termination under degeneracy.  The
basis system is re-solved from scratch every iteration; problem sizes here
(hundreds of rows at most) make that the simplest reliable choice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .program import EQ, GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED

#: Absolute tolerance for reduced-cost and pivot comparisons.
TOL = 1e-9
#: Aggregate phase-1 residual below which the LP counts as feasible.
FEAS_TOL = 1e-7

_AT_LOWER = 0
_AT_UPPER = 1
_BASIC = 2


class SimplexError(RuntimeError):
    """Iteration cap exceeded; indicates numerical trouble, not infeasibility."""


@dataclass(frozen=True)
class LPResult:
    status: str
    x: np.ndarray | None
    objective: float
    iterations: int
    # Row index whose phase-1 artificial stayed positive (infeasibility hint).
    bad_row: int | None = None


def solve_lp(
    a: np.ndarray,
    relations: list[str],
    b: np.ndarray,
    c: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    maximize: bool = False,
) -> LPResult:
    """Solve min/max c.x subject to rows (a, relations, b) and lower <= x <= upper.

    Lower bounds must be finite; upper bounds may be +inf.  Returns variable
    values for the structural variables only.
    """
    n = a.shape[1] if a.size else len(c)
    m = len(b)
    if np.any(lower > upper):
        return LPResult(INFEASIBLE, None, 0.0, 0)

    c_min = np.asarray(c, dtype=float)
    if maximize:
        c_min = -c_min

    # Normalize every row to `lhs + slack = rhs` with slack in [0, inf) for <=
    # (>= rows are negated) and [0, 0] for equalities.
    rows = np.array(a, dtype=float).reshape(m, n).copy()
    rhs = np.asarray(b, dtype=float).copy()
    slack_upper = np.empty(m)
    for i, rel in enumerate(relations):
        if rel == GE:
            rows[i] *= -1.0
            rhs[i] *= -1.0
            slack_upper[i] = np.inf
        elif rel == LE:
            slack_upper[i] = np.inf
        elif rel == EQ:
            slack_upper[i] = 0.0
        else:
            raise ValueError(f"bad relation {rel!r}")

    tab = _Tableau(rows, rhs, c_min, np.asarray(lower, float), np.asarray(upper, float), slack_upper)
    result = tab.run()
    if result.status != OPTIMAL:
        return result
    obj = result.objective
    return LPResult(OPTIMAL, result.x, -obj if maximize else obj, result.iterations, None)


class _Tableau:
    """Bounded-variable simplex state over structural + slack + artificial columns."""

    def __init__(self, rows, rhs, c_min, lower, upper, slack_upper):
        m, n = rows.shape
        self.m, self.n = m, n
        self.cols = np.hstack([rows, np.eye(m)]) if m else rows.reshape(0, n)
        self.lower = np.concatenate([lower, np.zeros(m)])
        self.upper = np.concatenate([upper, slack_upper])
        self.c_real = np.concatenate([c_min, np.zeros(m)])
        self.rhs = rhs
        self.status = np.full(n + m, _AT_LOWER, dtype=np.int8)
        self.basis: list[int] = []
        self.artificial_from = n + m  # columns >= this index are artificial
        self.iterations = 0
        self.bad_row: int | None = None

    # -- setup ------------------------------------------------------------

    def _install_start_basis(self) -> None:
        n, m = self.n, self.m
        x_struct = self.lower[:n].copy()
        resid = self.rhs - self.cols[:, :n] @ x_struct if m else self.rhs
        art_cols = []
        art_sign = []
        basis = []
        for i in range(m):
            s = n + i
            if self.lower[s] - TOL <= resid[i] <= self.upper[s] + TOL:
                basis.append(s)
            else:
                # Slack stays nonbasic at 0; a signed artificial absorbs the gap.
                col = np.zeros(m)
                sign = 1.0 if resid[i] > 0 else -1.0
                col[i] = sign
                art_cols.append(col)
                art_sign.append(i)
                basis.append(self.artificial_from + len(art_cols) - 1)
        if art_cols:
            self.cols = np.hstack([self.cols, np.column_stack(art_cols)])
            k = len(art_cols)
            self.lower = np.concatenate([self.lower, np.zeros(k)])
            self.upper = np.concatenate([self.upper, np.full(k, np.inf)])
            self.c_real = np.concatenate([self.c_real, np.zeros(k)])
            self.status = np.concatenate([self.status, np.full(k, _BASIC, dtype=np.int8)])
        self.art_rows = art_sign
        self.basis = basis
        for j in basis:
            self.status[j] = _BASIC

    # -- core loop ---------------------------------------------------------

    def _nonbasic_values(self, total: int) -> np.ndarray:
        x = np.where(self.status[:total] == _AT_UPPER, self.upper[:total], self.lower[:total])
        x[self.basis] = 0.0
        return x

    def _basic_values(self, x_nb: np.ndarray) -> np.ndarray:
        if not self.m:
            return np.zeros(0)
        bmat = self.cols[:, self.basis]
        rhs_eff = self.rhs - self.cols @ x_nb
        return np.linalg.solve(bmat, rhs_eff)

    def _phase(self, cost: np.ndarray, max_iter: int, bland_after: int) -> str:
        total = self.cols.shape[1]
        fixed = self.lower >= self.upper - TOL  # cannot move; never enters
        for it in range(max_iter):
            self.iterations += 1
            use_bland = it >= bland_after
            x_nb = self._nonbasic_values(total)
            x_b = self._basic_values(x_nb)
            if self.m:
                bmat = self.cols[:, self.basis]
                y = np.linalg.solve(bmat.T, cost[self.basis])
                reduced = cost - y @ self.cols
            else:
                reduced = cost.copy()

            entering = -1
            best_score = TOL
            for j in range(total):
                if self.status[j] == _BASIC or fixed[j]:
                    continue
                d = reduced[j]
                score = -d if self.status[j] == _AT_LOWER else d
                if score > best_score:
                    if use_bland:
                        entering = j
                        break
                    best_score = score
                    entering = j
                elif use_bland and score > TOL:
                    entering = j
                    break
            if entering < 0:
                return OPTIMAL

            direction = 1.0 if self.status[entering] == _AT_LOWER else -1.0
            w = (
                np.linalg.solve(self.cols[:, self.basis], self.cols[:, entering])
                if self.m
                else np.zeros(0)
            )

            # Ratio test: entering moves by theta >= 0 in `direction`.
            theta = self.upper[entering] - self.lower[entering]  # bound flip
            leave_row = -1
            for i in range(self.m):
                wi = direction * w[i]
                var = self.basis[i]
                if wi > TOL:
                    limit = (x_b[i] - self.lower[var]) / wi
                elif wi < -TOL:
                    if not np.isfinite(self.upper[var]):
                        continue
                    limit = (self.upper[var] - x_b[i]) / (-wi)
                else:
                    continue
                limit = max(limit, 0.0)
                if limit < theta - TOL or (
                    leave_row >= 0
                    and abs(limit - theta) <= TOL
                    and var < self.basis[leave_row]
                ):
                    theta = limit
                    leave_row = i
            if not np.isfinite(theta):
                return UNBOUNDED

            if leave_row < 0:
                # Entering variable runs to its opposite bound: flip, no pivot.
                self.status[entering] = (
                    _AT_UPPER if self.status[entering] == _AT_LOWER else _AT_LOWER
                )
                continue

            leaving = self.basis[leave_row]
            wi = direction * w[leave_row]
            self.status[leaving] = _AT_LOWER if wi > 0 else _AT_UPPER
            self.basis[leave_row] = entering
            self.status[entering] = _BASIC
        raise SimplexError(f"no convergence after {max_iter} iterations")

    def run(self) -> LPResult:
        self._install_start_basis()
        total = self.cols.shape[1]
        max_iter = 2000 + 40 * total
        bland_after = 200 + 10 * total

        if total > self.artificial_from:
            phase1_cost = np.zeros(total)
            phase1_cost[self.artificial_from :] = 1.0
            status = self._phase(phase1_cost, max_iter, bland_after)
            if status != OPTIMAL:  # pragma: no cover - phase 1 is bounded below
                raise SimplexError("phase 1 terminated abnormally")
            x_nb = self._nonbasic_values(total)
            x_b = self._basic_values(x_nb)
            art_level = 0.0
            worst_row = None
            for i, var in enumerate(self.basis):
                if var >= self.artificial_from and x_b[i] > TOL:
                    art_level += x_b[i]
                    if worst_row is None or x_b[i] > x_b[worst_row]:
                        worst_row = i
            if art_level > FEAS_TOL:
                bad = self.art_rows[self.basis[worst_row] - self.artificial_from]
                return LPResult(INFEASIBLE, None, 0.0, self.iterations, bad_row=bad)
            self._expel_artificials()
            total = self.cols.shape[1]

        cost = self.c_real[:total]
        status = self._phase(cost, max_iter, bland_after)
        if status == UNBOUNDED:
            return LPResult(UNBOUNDED, None, 0.0, self.iterations)
        x = self._full_solution(total)
        obj = float(cost @ x[:total])
        return LPResult(OPTIMAL, x[: self.n].copy(), obj, self.iterations)

    # -- helpers -----------------------------------------------------------

    def _expel_artificials(self) -> None:
        """Pivot leftover zero-level artificials out of the basis, dropping
        redundant rows when no real pivot column exists."""
        keep_rows = list(range(self.m))
        for i in range(self.m):
            var = self.basis[i]
            if var < self.artificial_from:
                continue
            bmat = self.cols[:, self.basis]
            pivot_col = -1
            for j in range(self.artificial_from):
                if self.status[j] == _BASIC:
                    continue
                w = np.linalg.solve(bmat, self.cols[:, j])
                if abs(w[i]) > 1e-7:
                    pivot_col = j
                    break
            if pivot_col >= 0:
                self.status[var] = _AT_LOWER
                self.basis[i] = pivot_col
                self.status[pivot_col] = _BASIC
            else:
                keep_rows.remove(i)
        if len(keep_rows) != self.m:
            basis = [self.basis[i] for i in keep_rows]
            self.cols = self.cols[keep_rows, :]
            self.rhs = self.rhs[keep_rows]
            self.m = len(keep_rows)
            self.basis = basis
        # Freeze any artificial columns so they can never re-enter.
        self.upper[self.artificial_from :] = 0.0
        self.lower[self.artificial_from :] = 0.0
        for j in range(self.artificial_from, self.cols.shape[1]):
            if self.status[j] == _BASIC and j not in self.basis:
                self.status[j] = _AT_LOWER
            if self.status[j] != _BASIC:
                self.status[j] = _AT_LOWER

    def _full_solution(self, total: int) -> np.ndarray:
        x = self._nonbasic_values(total)
        if self.m:
            x_b = self._basic_values(x)
            for i, var in enumerate(self.basis):
                x[var] = x_b[i]
        # Basic values can sit a feasibility-tolerance hair outside their box
        # on badly scaled rows; project back so callers (branching!) can trust
        # the bounds they imposed.
        return np.clip(x, self.lower[:total], self.upper[:total])
