"""Self-contained linear-programming and mixed-integer engine.

A dense two-phase primal simplex (largest-coefficient pricing, falling back to
Bland's rule when the objective stalls) plus best-bound branch and bound over
binary variables. Every program solved in this package has at most a few dozen
variables, so an embedded deterministic engine is preferable to an external
solver dependency: re-solving the same program is bit-identical.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

#: Constraint satisfaction tolerance checked on every optimal solution.
FEASIBILITY_TOL = 1e-7
#: Reduced-cost tolerance: a column prices in only below this.
OPTIMALITY_TOL = 1e-9
#: Binary variables must sit this close to 0 or 1 to count as integral.
INTEGRALITY_TOL = 1e-6
#: Smallest pivot element accepted in the ratio test.
_PIVOT_TOL = 1e-10
#: Node pruning slack; keeps the final incumbent well inside the 1e-6 gap.
_PRUNE_TOL = 1e-9

INF = math.inf


class SolverError(RuntimeError):
    """The engine violated one of its own guarantees (a bug, not bad input)."""


class ProgramError(ValueError):
    """The linear program is malformed."""


@dataclass(frozen=True)
class Variable:
    name: str
    lower: float = 0.0
    upper: float = INF
    binary: bool = False


@dataclass(frozen=True)
class Constraint:
    coeffs: Mapping[str, float]
    relation: str  # "<=", "=", ">="
    rhs: float


@dataclass
class Solution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective: float | None
    assignment: dict[str, float]

    def __getitem__(self, name: str) -> float:
        return self.assignment[name]


class LinearProgram:
    """Mutable builder for an LP/MILP; solved via :func:`solve_lp` or
    :func:`solve_milp`."""

    def __init__(self) -> None:
        self.variables: list[Variable] = []
        self.constraints: list[Constraint] = []
        self.sense: str = "min"
        self.objective: dict[str, float] = {}
        self._index: dict[str, int] = {}

    def add_variable(
        self,
        name: str,
        lower: float = 0.0,
        upper: float = INF,
        binary: bool = False,
    ) -> str:
        if name in self._index:
            raise ProgramError(f"variable {name!r} declared twice")
        if binary:
            if lower not in (0.0, 1.0) or upper not in (0.0, 1.0):
                raise ProgramError(f"binary {name!r} needs bounds in {{0, 1}}")
        if lower > upper:
            raise ProgramError(f"variable {name!r}: lower bound above upper")
        self._index[name] = len(self.variables)
        self.variables.append(Variable(name, float(lower), float(upper), binary))
        return name

    def add_constraint(
        self, coeffs: Mapping[str, float], relation: str, rhs: float
    ) -> None:
        if relation not in ("<=", "=", ">="):
            raise ProgramError(f"unknown relation {relation!r}")
        for name in coeffs:
            if name not in self._index:
                raise ProgramError(f"constraint references unknown variable {name!r}")
        self.constraints.append(Constraint(dict(coeffs), relation, float(rhs)))

    def set_objective(self, sense: str, coeffs: Mapping[str, float]) -> None:
        if sense not in ("min", "max"):
            raise ProgramError(f"unknown sense {sense!r}")
        for name in coeffs:
            if name not in self._index:
                raise ProgramError(f"objective references unknown variable {name!r}")
        self.sense = sense
        self.objective = dict(coeffs)

    @property
    def binary_names(self) -> list[str]:
        return [v.name for v in self.variables if v.binary]


def to_lp_text(p: LinearProgram, name: str = "program") -> str:
    """Dump in CPLEX-LP text format for cross-checking with external solvers."""

    def term(c: float, v: str) -> str:
        sign = "-" if c < 0 else "+"
        return f" {sign} {abs(c):.17g} {v}"

    def expr(coeffs: Mapping[str, float]) -> str:
        parts = "".join(term(c, v) for v, c in coeffs.items() if c != 0.0)
        if not parts:
            return "0"
        return parts.lstrip(" +") if parts.startswith(" +") else parts.lstrip()

    lines = [f"\\ {name}", "Maximize" if p.sense == "max" else "Minimize"]
    lines.append(f" obj: {expr(p.objective)}")
    lines.append("Subject To")
    for i, c in enumerate(p.constraints):
        rel = {"<=": "<=", ">=": ">=", "=": "="}[c.relation]
        lines.append(f" c{i}: {expr(c.coeffs)} {rel} {c.rhs:.17g}")
    lines.append("Bounds")
    for v in p.variables:
        if v.lower == -INF and v.upper == INF:
            lines.append(f" {v.name} free")
        elif v.upper == INF:
            lines.append(f" {v.name} >= {v.lower:.17g}")
        elif v.lower == -INF:
            lines.append(f" {v.name} <= {v.upper:.17g}")
        else:
            lines.append(f" {v.lower:.17g} <= {v.name} <= {v.upper:.17g}")
    binaries = p.binary_names
    if binaries:
        lines.append("Binaries")
        lines.append(" " + " ".join(binaries))
    lines.append("End")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Standard-form conversion
# ---------------------------------------------------------------------------


class _StandardForm:
    """min c'y s.t. Ay = b, y >= 0, remembering how to map y back."""

    def __init__(self, p: LinearProgram, relax_binaries: bool = True):
        if not relax_binaries and p.binary_names:
            raise ProgramError("solve_lp accepts only continuous variables")
        # Per original variable: list of (column, sign) plus an offset so that
        # x = offset + sum(sign * y_col).
        self.col_of: list[list[tuple[int, float]]] = []
        self.offset: list[float] = []
        ub_rows: list[tuple[int, float]] = []  # (column, upper - lower)
        ncols = 0
        for v in p.variables:
            lo, up = v.lower, v.upper
            if lo > -INF:
                self.col_of.append([(ncols, 1.0)])
                self.offset.append(lo)
                if up < INF:
                    ub_rows.append((ncols, up - lo))
                ncols += 1
            elif up < INF:
                self.col_of.append([(ncols, -1.0)])
                self.offset.append(up)
                ncols += 1
            else:
                self.col_of.append([(ncols, 1.0), (ncols + 1, -1.0)])
                self.offset.append(0.0)
                ncols += 2

        nrows = len(p.constraints) + len(ub_rows)
        nslack = sum(1 for c in p.constraints if c.relation != "=") + len(ub_rows)
        A = np.zeros((nrows, ncols + nslack))
        b = np.zeros(nrows)
        idx = p._index
        slack = ncols
        for r, con in enumerate(p.constraints):
            rhs = con.rhs
            for name, coef in con.coeffs.items():
                vi = idx[name]
                rhs -= coef * self.offset[vi]
                for col, sign in self.col_of[vi]:
                    A[r, col] += coef * sign
            b[r] = rhs
            if con.relation == "<=":
                A[r, slack] = 1.0
                slack += 1
            elif con.relation == ">=":
                A[r, slack] = -1.0
                slack += 1
        for k, (col, cap) in enumerate(ub_rows):
            r = len(p.constraints) + k
            A[r, col] = 1.0
            b[r] = cap
            A[r, slack] = 1.0
            slack += 1

        # Objective over standard columns (internally always minimized).
        flip = -1.0 if p.sense == "max" else 1.0
        c = np.zeros(ncols + nslack)
        for name, coef in p.objective.items():
            vi = idx[name]
            for col, sign in self.col_of[vi]:
                c[col] += flip * coef * sign
        self.A, self.b, self.c = A, b, c
        self.ncols = ncols + nslack
        self.program = p

    def recover(self, y: np.ndarray) -> dict[str, float]:
        out = {}
        for v, spec in zip(self.program.variables, self.col_of):
            x = self.offset[self.program._index[v.name]]
            for col, sign in spec:
                x += sign * y[col]
            out[v.name] = float(x)
        return out


# ---------------------------------------------------------------------------
# Two-phase tableau simplex
# ---------------------------------------------------------------------------

_MAX_ITER = 100_000


def _run_simplex(T: np.ndarray, c: np.ndarray, basis: list[int]) -> str:
    """Minimize c over the tableau T = [B^-1 A | B^-1 b] in place.

    Returns "optimal" or "unbounded". Pricing uses the most negative reduced
    cost (first index on ties) and switches permanently to Bland's rule if the
    objective fails to improve for a stretch, which rules out cycling.
    """
    m, w = T.shape
    n = w - 1
    bland = False
    stall = 0
    stall_limit = 2 * (m + n) + 20
    last_obj = math.inf
    for _ in range(_MAX_ITER):
        z = c - c[basis] @ T[:, :n]
        if bland:
            enter = -1
            for j in range(n):
                if z[j] < -OPTIMALITY_TOL:
                    enter = j
                    break
        else:
            enter = int(np.argmin(z))
            if z[enter] >= -OPTIMALITY_TOL:
                enter = -1
        if enter < 0:
            return "optimal"
        col = T[:, enter]
        ratios = np.full(m, math.inf)
        ok = col > _PIVOT_TOL
        if not ok.any():
            return "unbounded"
        ratios[ok] = T[ok, n] / col[ok]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + 1e-12)
        if bland:
            leave = int(min(ties, key=lambda r: basis[r]))
        else:
            leave = int(ties[0])
        # Pivot.
        T[leave] = T[leave] / T[leave, enter]
        piv = T[leave].copy()
        factors = T[:, enter].copy()
        factors[leave] = 0.0
        T -= np.outer(factors, piv)
        T[leave] = piv
        basis[leave] = enter
        obj = float(c[basis] @ T[:, n])
        if obj < last_obj - 1e-12:
            last_obj = obj
            stall = 0
        else:
            stall += 1
            if stall > stall_limit:
                bland = True
    raise SolverError("simplex iteration limit exceeded")


def _solve_standard(sf: _StandardForm) -> Solution:
    A, b, c = sf.A, sf.b, sf.c
    m, n = A.shape
    if n == 0:
        # No columns: every constraint is a plain right-hand-side check.
        for con in sf.program.constraints:
            gap = -con.rhs
            if (
                (con.relation == "<=" and gap > FEASIBILITY_TOL)
                or (con.relation == ">=" and gap < -FEASIBILITY_TOL)
                or (con.relation == "=" and abs(gap) > FEASIBILITY_TOL)
            ):
                return Solution("infeasible", None, {})
        return Solution("optimal", 0.0, {})
    # Orient rows so the right-hand side is nonnegative, then add one
    # artificial per row as the phase-1 basis.
    A = A.copy()
    b = b.copy()
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    T = np.hstack([A, np.eye(m), b.reshape(-1, 1)])
    c1 = np.concatenate([np.zeros(n), np.ones(m)])
    basis = list(range(n, n + m))
    if _run_simplex(T, c1, basis) != "optimal":
        raise SolverError("phase 1 cannot be unbounded")
    if float(c1[basis] @ T[:, -1]) > FEASIBILITY_TOL:
        return Solution("infeasible", None, {})

    # Drive leftover artificials out of the basis (degenerately) or drop
    # their rows as redundant.
    keep = list(range(m))
    for r in range(m):
        if basis[r] >= n:
            piv = -1
            for j in range(n):
                if abs(T[r, j]) > 1e-9:
                    piv = j
                    break
            if piv < 0:
                keep.remove(r)
                continue
            T[r] = T[r] / T[r, piv]
            pivrow = T[r].copy()
            factors = T[:, piv].copy()
            factors[r] = 0.0
            T -= np.outer(factors, pivrow)
            T[r] = pivrow
            basis[r] = piv

    T = np.hstack([T[keep][:, :n], T[keep][:, -1:]])
    basis = [basis[r] for r in keep]
    status = _run_simplex(T, c, basis)
    if status == "unbounded":
        return Solution("unbounded", None, {})

    y = np.zeros(n)
    rows = len(basis)
    for r in range(rows):
        y[basis[r]] = T[r, -1]
    y[y < 0] = np.where(y[y < 0] > -FEASIBILITY_TOL, 0.0, y[y < 0])

    assignment = sf.recover(y)
    p = sf.program
    obj = sum(coef * assignment[name] for name, coef in p.objective.items())
    _verify(p, assignment)
    return Solution("optimal", float(obj), assignment)


def _verify(p: LinearProgram, assignment: Mapping[str, float]) -> None:
    for v in p.variables:
        x = assignment[v.name]
        if x < v.lower - FEASIBILITY_TOL or x > v.upper + FEASIBILITY_TOL:
            raise SolverError(f"bound violated for {v.name}: {x}")
    for i, con in enumerate(p.constraints):
        lhs = sum(coef * assignment[name] for name, coef in con.coeffs.items())
        gap = lhs - con.rhs
        if con.relation == "<=" and gap > FEASIBILITY_TOL:
            raise SolverError(f"constraint {i} violated by {gap}")
        if con.relation == ">=" and gap < -FEASIBILITY_TOL:
            raise SolverError(f"constraint {i} violated by {-gap}")
        if con.relation == "=" and abs(gap) > FEASIBILITY_TOL:
            raise SolverError(f"constraint {i} violated by {abs(gap)}")


def solve_lp(p: LinearProgram) -> Solution:
    """Solve a purely continuous program; statuses never raise."""
    return _solve_standard(_StandardForm(p, relax_binaries=False))


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------


def _relaxation(p: LinearProgram, fixed: Mapping[str, int]) -> Solution:
    q = LinearProgram()
    for v in p.variables:
        if v.binary:
            val = fixed.get(v.name)
            if val is None:
                q.add_variable(v.name, v.lower, v.upper)
            else:
                q.add_variable(v.name, float(val), float(val))
        else:
            q.add_variable(v.name, v.lower, v.upper)
    for con in p.constraints:
        q.add_constraint(con.coeffs, con.relation, con.rhs)
    q.set_objective(p.sense, p.objective)
    return solve_lp(q)


def solve_milp(p: LinearProgram) -> Solution:
    """Exact best-bound branch and bound over the binary variables.

    Deterministic: nodes are ordered by (bound, insertion counter), branching
    picks the most fractional binary with the lowest index on ties.
    """
    binaries = p.binary_names
    flip = -1.0 if p.sense == "max" else 1.0

    root = _relaxation(p, {})
    if root.status != "optimal":
        return root

    counter = 0
    heap: list[tuple[float, int, dict[str, int], Solution | None]] = [
        (flip * root.objective, counter, {}, root)
    ]
    incumbent: Solution | None = None
    inc_obj = math.inf

    while heap:
        bound, _, fixed, cached = heapq.heappop(heap)
        if bound >= inc_obj - _PRUNE_TOL:
            break  # best-bound order: nothing better remains
        sol = cached if cached is not None else _relaxation(p, fixed)
        if sol.status == "unbounded":
            return Solution("unbounded", None, {})
        if sol.status != "optimal":
            continue
        obj = flip * sol.objective
        if obj >= inc_obj - _PRUNE_TOL:
            continue
        frac_name = ""
        frac_dist = -1.0
        for name in binaries:
            v = sol.assignment[name]
            d = min(v, 1.0 - v)
            if d > INTEGRALITY_TOL and d > frac_dist + 1e-15:
                frac_name, frac_dist = name, d
        if not frac_name:
            if all(sol.assignment[name] in (0.0, 1.0) for name in binaries):
                if obj < inc_obj - _PRUNE_TOL:
                    incumbent, inc_obj = sol, obj
                continue
            # Integral only within tolerance: pin every binary to its rounded
            # value and re-solve so the vertex carries exact 0/1 entries.
            pin = {name: int(round(sol.assignment[name])) for name in binaries}
            exact = _relaxation(p, pin)
            if exact.status == "optimal":
                eobj = flip * exact.objective
                if eobj < inc_obj - _PRUNE_TOL:
                    for name, val in pin.items():
                        exact.assignment[name] = float(val)
                    incumbent, inc_obj = exact, eobj
            continue
        for val in (0, 1):
            counter += 1
            child = dict(fixed)
            child[frac_name] = val
            heapq.heappush(heap, (obj, counter, child, None))

    if incumbent is None:
        return Solution("infeasible", None, {})
    return incumbent
