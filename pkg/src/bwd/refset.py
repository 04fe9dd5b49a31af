"""Reference-set selection: the smallest mutually non-dominated subset of
alternatives that covers every attribute segment a required number of times."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .model import BreakpointGrid, PerformanceMatrix, ValidationError, pareto_dominates
from .optimizer import LinearProgram, solve_milp


def coverage_array(matrix: PerformanceMatrix, grid: BreakpointGrid) -> np.ndarray:
    """Binary m x n x s array: entry (i, j, k) marks that alternative i falls
    in segment k of criterion j. Requires a uniform segment count."""
    counts = grid.segment_counts
    if len(set(counts)) != 1:
        raise ValidationError(
            f"coverage needs a uniform segment count, got {counts}"
        )
    s = counts[0]
    cov = np.zeros((matrix.m, matrix.n, s), dtype=np.int8)
    internal = matrix.internal_levels
    for i in range(matrix.m):
        for j in range(matrix.n):
            cov[i, j, grid.segment_index(j, internal[i, j])] = 1
    cov.setflags(write=False)
    return cov


def dominance_pairs(matrix: PerformanceMatrix) -> set[tuple[int, int]]:
    """All pairs (i, i2) with i < i2 where one row Pareto-dominates the other."""
    pairs = set()
    for i in range(matrix.m):
        for i2 in range(i + 1, matrix.m):
            if pareto_dominates(matrix, i, i2) or pareto_dominates(matrix, i2, i):
                pairs.add((i, i2))
    return pairs


@dataclass(frozen=True)
class Selection:
    """A feasible minimum-cardinality reference set (sorted indices)."""

    indices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class InfeasibleSelection:
    """Why no reference set exists.

    ``pigeonhole_cells`` lack enough allowed coverers outright;
    ``conflict_cells`` have enough coverers but they dominate each other.
    When both lists are empty the infeasibility comes from interactions
    between cells.
    """

    coverage: int
    pigeonhole_cells: tuple[tuple[int, int], ...]
    conflict_cells: tuple[tuple[int, int], ...]

    @property
    def message(self) -> str:
        parts = [f"no reference set covers every segment {self.coverage} time(s)"]
        if self.pigeonhole_cells:
            parts.append(f"under-covered cells (criterion, segment): "
                         f"{list(self.pigeonhole_cells)}")
        if self.conflict_cells:
            parts.append(f"cells whose coverers dominate each other: "
                         f"{list(self.conflict_cells)}")
        if not self.pigeonhole_cells and not self.conflict_cells:
            parts.append("caused by interactions between dominance conflicts "
                         "across cells")
        return "; ".join(parts)


def _selection_program(
    cov: np.ndarray,
    dom: Iterable[tuple[int, int]],
    b: int,
    forbidden: frozenset[int],
) -> LinearProgram:
    m, n, s = cov.shape
    lp = LinearProgram()
    for i in range(m):
        if i in forbidden:
            lp.add_variable(f"y{i}", 0.0, 0.0, binary=True)
        else:
            lp.add_variable(f"y{i}", 0.0, 1.0, binary=True)
    for j in range(n):
        for k in range(s):
            coeffs = {f"y{i}": 1.0 for i in range(m) if cov[i, j, k]}
            lp.add_constraint(coeffs, ">=", float(b))
    for i, i2 in sorted(dom):
        lp.add_constraint({f"y{i}": 1.0, f"y{i2}": 1.0}, "<=", 1.0)
    lp.set_objective("min", {f"y{i}": 1.0 for i in range(m)})
    return lp


def select_reference_set(
    cov: np.ndarray,
    dom: set[tuple[int, int]],
    b: int = 1,
    forbidden: Iterable[int] = (),
) -> Selection | InfeasibleSelection:
    """Minimum-cardinality selection covering every (criterion, segment) cell
    at least ``b`` times, never containing a dominance pair, skipping forbidden
    indices. Ties between optima break toward the lexicographically smallest
    index set.
    """
    if b < 1:
        raise ValidationError("coverage multiplicity b must be >= 1")
    forbidden = frozenset(int(i) for i in forbidden)
    m, n, s = cov.shape
    bad = [i for i in forbidden if not 0 <= i < m]
    if bad:
        raise ValidationError(f"forbidden indices out of range: {bad}")

    base = _selection_program(cov, dom, b, forbidden)
    root = solve_milp(base)
    if root.status != "optimal":
        return _diagnose(cov, dom, b, forbidden)
    cardinality = int(round(root.objective))

    # Lexicographic refinement: sweep indices in order and keep index i only
    # if some optimum containing all kept indices (and excluding all rejected
    # ones) still exists. Equivalent to maximizing sum(2^-i) but exact for any
    # problem size.
    fixed: dict[int, int] = dict.fromkeys(forbidden, 0)
    chosen: list[int] = []
    for i in range(m):
        if i in fixed:
            continue
        if len(chosen) == cardinality:
            fixed[i] = 0
            continue
        trial = _selection_program(cov, dom, b, forbidden)
        trial.add_constraint({f"y{v}": 1.0 for v in range(m)}, "=", float(cardinality))
        for v, val in fixed.items():
            if v not in forbidden:
                trial.add_constraint({f"y{v}": 1.0}, "=", float(val))
        trial.add_constraint({f"y{i}": 1.0}, "=", 1.0)
        if solve_milp(trial).status == "optimal":
            fixed[i] = 1
            chosen.append(i)
        else:
            fixed[i] = 0
    if len(chosen) != cardinality:
        raise RuntimeError("lexicographic refinement lost the optimum")

    indices = tuple(sorted(chosen))
    _verify_selection(cov, dom, b, indices)
    return Selection(indices)


def _verify_selection(
    cov: np.ndarray, dom: set[tuple[int, int]], b: int, indices: tuple[int, ...]
) -> None:
    m, n, s = cov.shape
    picked = cov[list(indices)].sum(axis=0)
    if (picked < b).any():
        raise RuntimeError("selected set fails the coverage requirement")
    inside = set(indices)
    for i, i2 in dom:
        if i in inside and i2 in inside:
            raise RuntimeError(f"selected set contains dominance pair ({i}, {i2})")


def _diagnose(
    cov: np.ndarray,
    dom: set[tuple[int, int]],
    b: int,
    forbidden: frozenset[int],
) -> InfeasibleSelection:
    m, n, s = cov.shape
    allowed = [i for i in range(m) if i not in forbidden]
    pigeonhole = []
    conflict = []
    for j in range(n):
        for k in range(s):
            coverers = [i for i in allowed if cov[i, j, k]]
            if len(coverers) < b:
                pigeonhole.append((j, k))
                continue
            if _max_conflict_free(coverers, dom) < b:
                conflict.append((j, k))
    return InfeasibleSelection(b, tuple(pigeonhole), tuple(conflict))


def _max_conflict_free(coverers: list[int], dom: set[tuple[int, int]]) -> int:
    lp = LinearProgram()
    for i in coverers:
        lp.add_variable(f"y{i}", 0.0, 1.0, binary=True)
    inside = set(coverers)
    for i, i2 in dom:
        if i in inside and i2 in inside:
            lp.add_constraint({f"y{i}": 1.0, f"y{i2}": 1.0}, "<=", 1.0)
    lp.set_objective("max", {f"y{i}": 1.0 for i in coverers})
    sol = solve_milp(lp)
    return int(round(sol.objective))


def augment_selection(
    matrix: PerformanceMatrix,
    selection: Selection,
    extra: Iterable[int],
) -> Selection:
    """Union an analyst's manual additions into a selection.

    Dominance between members is re-checked; violations warn rather than fail
    because the addition is the analyst's call.
    """
    extra = [int(i) for i in extra]
    for i in extra:
        if not 0 <= i < matrix.m:
            raise ValidationError(f"index {i} outside the matrix")
    merged = tuple(sorted(set(selection.indices) | set(extra)))
    for a in merged:
        for c in merged:
            if a < c and (
                pareto_dominates(matrix, a, c) or pareto_dominates(matrix, c, a)
            ):
                warnings.warn(
                    f"augmented reference set contains a dominance pair "
                    f"({matrix.ids[a]!r}, {matrix.ids[c]!r})",
                    stacklevel=2,
                )
    return Selection(merged)
