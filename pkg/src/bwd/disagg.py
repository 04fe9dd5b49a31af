"""Fit a piecewise-linear additive value model to best/worst comparisons.

The decision variables are the breakpoint values of each attribute function
(the lower anchor is fixed at zero and dropped). Reference alternatives enter
the program as fixed interpolation combinations of those variables, so the
whole fit is a single linear program minimizing the largest deviation between
judged ratios and modeled values. Interval judgments relax each two-sided
equation into the judged band before the slack applies; degenerate intervals
reproduce the real-valued fit exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    VALUE_TOL,
    BreakpointGrid,
    ComparisonSet,
    PerformanceMatrix,
    PiecewiseValueModel,
    ValidationError,
    evaluate_global,
)
from .optimizer import LinearProgram, Solution, SolverError, solve_lp

#: Slack added to the optimal deviation when re-exploring the optimal set.
EPS_OPT = 1e-9

_XI = "xi"


@dataclass(frozen=True)
class DisaggregationResult:
    """Optimal deviation, a representative model, and the induced ranking.

    ``ranking`` lists tie groups best-first; ids within a group differ by less
    than the value tolerance under the representative model.
    """

    xi_star: float
    representative: PiecewiseValueModel
    values: dict[str, float]
    ranking: tuple[tuple[str, ...], ...]


def _check_inputs(
    matrix: PerformanceMatrix, grid: BreakpointGrid, comparisons: ComparisonSet
) -> None:
    if grid.n != matrix.n:
        raise ValidationError(
            f"grid has {grid.n} criteria, matrix has {matrix.n}"
        )
    for j, crit in enumerate(matrix.criteria):
        row = grid.breakpoints[j]
        if abs(row[0] - crit.lower) > 1e-9 or abs(row[-1] - crit.upper) > 1e-9:
            raise ValidationError(
                f"criterion {crit.name!r}: grid range [{row[0]}, {row[-1]}] "
                f"does not match [{crit.lower}, {crit.upper}]"
            )
    for i in comparisons.reference:
        if not 0 <= i < matrix.m:
            raise ValidationError(f"reference index {i} outside the matrix")


def _uvar(j: int, k: int) -> str:
    return f"u_{j}_{k}"


def add_model_variables(lp: LinearProgram, grid: BreakpointGrid) -> None:
    """Breakpoint variables with monotonicity and normalization; the k = 0
    anchors are constants (zero) and get no variable."""
    for j in range(grid.n):
        s = grid.segments(j)
        for k in range(1, s + 1):
            lp.add_variable(_uvar(j, k), 0.0, 1.0)
        for k in range(1, s):
            lp.add_constraint(
                {_uvar(j, k): 1.0, _uvar(j, k + 1): -1.0}, "<=", 0.0
            )
    lp.add_constraint(
        {_uvar(j, grid.segments(j)): 1.0 for j in range(grid.n)}, "=", 1.0
    )


def value_coeffs(grid: BreakpointGrid, internal_row: np.ndarray) -> dict[str, float]:
    """Global value of a consequence vector as a linear form over breakpoint
    variables (zero anchors drop out)."""
    out: dict[str, float] = {}
    for j in range(grid.n):
        for k, c in grid.interpolation_coefficients(j, float(internal_row[j])):
            if k == 0:
                continue
            name = _uvar(j, k)
            out[name] = out.get(name, 0.0) + c
    return out


def _combine(
    terms: list[tuple[dict[str, float], float]], extra: dict[str, float] | None = None
) -> dict[str, float]:
    out: dict[str, float] = dict(extra or {})
    for coeffs, scale in terms:
        for name, c in coeffs.items():
            out[name] = out.get(name, 0.0) + scale * c
    return {k: v for k, v in out.items() if v != 0.0}


def add_judgment_constraints(
    lp: LinearProgram,
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
    xi: str | float,
) -> None:
    """The two comparison families. ``xi`` is either the slack variable name
    or a fixed cap describing the optimal set of a previous solve."""
    internal = matrix.internal_levels
    val = {i: value_coeffs(grid, internal[i]) for i in comparisons.reference}
    B, W = comparisons.best, comparisons.worst

    def add_pair(lead: dict[str, float], other: dict[str, float],
                 lo: float, hi: float) -> None:
        # lead - hi*other <= xi  and  lead - lo*other >= -xi
        if isinstance(xi, str):
            lp.add_constraint(
                _combine([(lead, 1.0), (other, -hi)], {xi: -1.0}), "<=", 0.0
            )
            lp.add_constraint(
                _combine([(lead, 1.0), (other, -lo)], {xi: 1.0}), ">=", 0.0
            )
        else:
            lp.add_constraint(_combine([(lead, 1.0), (other, -hi)]), "<=", xi)
            lp.add_constraint(_combine([(lead, 1.0), (other, -lo)]), ">=", -xi)

    for i in comparisons.reference:
        if i != B:
            j = comparisons.bo[i]
            lo, hi = (j, j) if isinstance(j, float) else j
            add_pair(val[B], val[i], lo, hi)
        if i != W:
            j = comparisons.ow[i]
            lo, hi = (j, j) if isinstance(j, float) else j
            add_pair(val[i], val[W], lo, hi)


def _optimum(sol: Solution, what: str) -> Solution:
    if sol.status != "optimal":
        raise SolverError(f"{what} unexpectedly {sol.status}")
    return sol


def _extract_model(sol: Solution, grid: BreakpointGrid) -> tuple[tuple[float, ...], ...]:
    rows = []
    for j in range(grid.n):
        s = grid.segments(j)
        vals = [0.0] + [sol.assignment[_uvar(j, k)] for k in range(1, s + 1)]
        # Clamp solver noise so model invariants hold exactly where they can.
        for k in range(1, s + 1):
            if vals[k] < vals[k - 1]:
                vals[k] = vals[k - 1]
        rows.append(tuple(vals))
    return tuple(rows)


def representative_model(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
    xi_star: float,
) -> PiecewiseValueModel:
    """Average of the per-criterion weight-maximizing models over the optimal
    set: for each criterion, push its upper-anchor value as high as the
    optimal deviation allows, then average the resulting models."""
    _check_inputs(matrix, grid, comparisons)
    stack = []
    for focus in range(grid.n):
        lp = LinearProgram()
        add_model_variables(lp, grid)
        lp.add_variable(_XI, 0.0, xi_star + EPS_OPT)
        add_judgment_constraints(lp, matrix, grid, comparisons, _XI)
        lp.set_objective("max", {_uvar(focus, grid.segments(focus)): 1.0})
        sol = _optimum(solve_lp(lp), f"stability solve for criterion {focus}")
        stack.append(_extract_model(sol, grid))
    averaged = []
    for j in range(grid.n):
        cols = np.mean([np.array(model[j]) for model in stack], axis=0)
        averaged.append(tuple(float(v) for v in cols))
    total = sum(row[-1] for row in averaged)
    if abs(total - 1.0) > VALUE_TOL:
        # Spread the (sub-tolerance per solve) normalization drift.
        averaged = [
            tuple(v / total for v in row) for row in averaged
        ]
    return PiecewiseValueModel(grid, tuple(averaged))


def _rank(matrix: PerformanceMatrix, model: PiecewiseValueModel) -> tuple[
    dict[str, float], tuple[tuple[str, ...], ...]
]:
    internal = matrix.internal_levels
    values = {
        matrix.ids[i]: evaluate_global(model, internal[i]) for i in range(matrix.m)
    }
    order = sorted(range(matrix.m), key=lambda i: (-values[matrix.ids[i]], i))
    groups: list[list[str]] = []
    last = None
    for i in order:
        v = values[matrix.ids[i]]
        if last is None or last - v > VALUE_TOL:
            groups.append([matrix.ids[i]])
        else:
            groups[-1].append(matrix.ids[i])
        last = v
    return values, tuple(tuple(g) for g in groups)


def build_program(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
) -> LinearProgram:
    """The deviation-minimizing program (exposed for LP-format dumps)."""
    lp = LinearProgram()
    add_model_variables(lp, grid)
    lp.add_variable(_XI, 0.0)
    add_judgment_constraints(lp, matrix, grid, comparisons, _XI)
    lp.set_objective("min", {_XI: 1.0})
    return lp


def _solve(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
) -> DisaggregationResult:
    lp = build_program(matrix, grid, comparisons)
    sol = _optimum(solve_lp(lp), "deviation-minimizing solve")
    xi_star = float(sol.objective)
    rep = representative_model(matrix, grid, comparisons, xi_star)
    values, ranking = _rank(matrix, rep)
    return DisaggregationResult(xi_star, rep, values, ranking)


def solve_bwd(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
) -> DisaggregationResult:
    """Min-max fit of the model to real-valued comparisons."""
    _check_inputs(matrix, grid, comparisons)
    if not comparisons.is_real_valued:
        raise ValidationError("solve_bwd needs real-valued judgments")
    return _solve(matrix, grid, comparisons)


def solve_ibwd(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
) -> DisaggregationResult:
    """Min-max fit against interval judgments (degenerate intervals allowed)."""
    _check_inputs(matrix, grid, comparisons)
    for mapping in (comparisons.bo, comparisons.ow):
        for i, j in mapping.items():
            if not isinstance(j, tuple):
                raise ValidationError(
                    f"solve_ibwd needs interval judgments; index {i} is real"
                )
    return _solve(matrix, grid, comparisons)
