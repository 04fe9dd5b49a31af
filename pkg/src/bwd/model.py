"""Core domain types: performance matrices, breakpoint grids, piecewise-linear
additive value models, and best/worst comparison sets.

All solver-facing math runs in benefit orientation. Cost criteria are
re-oriented on construction by mapping a level ``x`` to ``upper + lower - x``;
the original levels are kept for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

#: Absolute tolerance for equality checks on quantities living in [0, 1].
VALUE_TOL = 1e-9

#: Judgment scale bounds (1 = indifference, 9 = extreme preference).
SCALE_MIN = 1.0
SCALE_MAX = 9.0

Judgment = Union[float, tuple[float, float]]


class ValidationError(ValueError):
    """Input data violates a structural requirement."""


class OutOfRangeError(ValidationError):
    """A level falls outside its criterion range (no extrapolation)."""


@dataclass(frozen=True)
class Criterion:
    """One evaluation dimension with its range and direction."""

    name: str
    lower: float
    upper: float
    direction: str = "benefit"

    def __post_init__(self) -> None:
        if self.direction not in ("benefit", "cost"):
            raise ValidationError(
                f"criterion {self.name!r}: direction must be 'benefit' or 'cost', "
                f"got {self.direction!r}"
            )
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValidationError(f"criterion {self.name!r}: non-finite range")
        if self.lower >= self.upper:
            raise ValidationError(
                f"criterion {self.name!r}: degenerate range "
                f"[{self.lower}, {self.upper}]"
            )

    def to_internal(self, x: float) -> float:
        """Map an original-unit level to benefit orientation."""
        if self.direction == "cost":
            return self.upper + self.lower - x
        return x

    def to_original(self, x: float) -> float:
        """Inverse of :meth:`to_internal` (the mapping is an involution)."""
        return self.to_internal(x)


@dataclass(frozen=True)
class PerformanceMatrix:
    """m alternatives evaluated on n criteria, levels in original units."""

    ids: tuple[str, ...]
    levels: np.ndarray
    criteria: tuple[Criterion, ...]

    def __post_init__(self) -> None:
        ids = tuple(str(i) for i in self.ids)
        criteria = tuple(self.criteria)
        levels = np.asarray(self.levels, dtype=float)
        if levels.ndim != 2:
            raise ValidationError("levels must be a 2-D array")
        m, n = levels.shape
        if m < 2:
            raise ValidationError(f"need at least 2 alternatives, got {m}")
        if n < 1:
            raise ValidationError("need at least 1 criterion")
        if len(ids) != m:
            raise ValidationError(f"{len(ids)} ids for {m} rows")
        if len(set(ids)) != m:
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValidationError(f"duplicate alternative ids: {dupes}")
        if len(criteria) != n:
            raise ValidationError(f"{len(criteria)} criteria for {n} columns")
        if not np.all(np.isfinite(levels)):
            raise ValidationError("levels contain non-finite entries")
        for j, crit in enumerate(criteria):
            col = levels[:, j]
            if col.min() < crit.lower or col.max() > crit.upper:
                raise ValidationError(
                    f"criterion {crit.name!r}: levels outside range "
                    f"[{crit.lower}, {crit.upper}]"
                )
        levels = levels.copy()
        levels.setflags(write=False)
        internal = levels.copy()
        for j, crit in enumerate(criteria):
            if crit.direction == "cost":
                internal[:, j] = crit.upper + crit.lower - internal[:, j]
        internal.setflags(write=False)
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "criteria", criteria)
        object.__setattr__(self, "_internal", internal)

    @classmethod
    def from_rows(
        cls,
        alternatives: Sequence[tuple[str, Sequence[float]]],
        criteria: Sequence[Criterion],
    ) -> "PerformanceMatrix":
        ids = tuple(a[0] for a in alternatives)
        levels = np.array([list(a[1]) for a in alternatives], dtype=float)
        return cls(ids, levels, tuple(criteria))

    @classmethod
    def from_levels(
        cls,
        ids: Sequence[str],
        levels: Sequence[Sequence[float]],
        names: Sequence[str],
        directions: Sequence[str] | None = None,
        ranges: Sequence[tuple[float, float] | None] | None = None,
    ) -> "PerformanceMatrix":
        """Build a matrix, defaulting ranges to the observed min/max per column."""
        arr = np.asarray(levels, dtype=float)
        if arr.ndim != 2:
            raise ValidationError("levels must be a 2-D array")
        n = arr.shape[1]
        if directions is None:
            directions = ["benefit"] * n
        if ranges is None:
            ranges = [None] * n
        criteria = []
        for j in range(n):
            rng = ranges[j]
            if rng is None:
                lo, hi = float(arr[:, j].min()), float(arr[:, j].max())
            else:
                lo, hi = float(rng[0]), float(rng[1])
            criteria.append(Criterion(str(names[j]), lo, hi, directions[j]))
        return cls(tuple(str(i) for i in ids), arr, tuple(criteria))

    @property
    def m(self) -> int:
        return self.levels.shape[0]

    @property
    def n(self) -> int:
        return self.levels.shape[1]

    @property
    def internal_levels(self) -> np.ndarray:
        """Levels in benefit orientation (cost columns mirrored)."""
        return self._internal  # type: ignore[attr-defined]

    def index_of(self, alt_id: str) -> int:
        try:
            return self.ids.index(alt_id)
        except ValueError:
            raise ValidationError(f"unknown alternative id {alt_id!r}") from None


@dataclass(frozen=True)
class BreakpointGrid:
    """Equally spaced breakpoints per criterion, in internal orientation."""

    breakpoints: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        bps = tuple(tuple(float(x) for x in row) for row in self.breakpoints)
        for j, row in enumerate(bps):
            if len(row) < 2:
                raise ValidationError(f"criterion {j}: need at least 2 breakpoints")
            span = row[-1] - row[0]
            if span <= 0:
                raise ValidationError(f"criterion {j}: breakpoints not increasing")
            step = span / (len(row) - 1)
            for k in range(len(row) - 1):
                if row[k + 1] <= row[k]:
                    raise ValidationError(
                        f"criterion {j}: breakpoints not strictly increasing"
                    )
                if abs((row[k + 1] - row[k]) - step) > 1e-9 * span:
                    raise ValidationError(f"criterion {j}: non-uniform spacing")
        object.__setattr__(self, "breakpoints", bps)

    @property
    def n(self) -> int:
        return len(self.breakpoints)

    def segments(self, j: int) -> int:
        return len(self.breakpoints[j]) - 1

    @property
    def segment_counts(self) -> tuple[int, ...]:
        return tuple(self.segments(j) for j in range(self.n))

    def segment_index(self, j: int, x: float) -> int:
        """Segment k with x in [x^k, x^{k+1}); the last segment is closed.

        Levels exactly on a shared breakpoint belong to the left-closed
        segment on its right.
        """
        row = self.breakpoints[j]
        if x < row[0] - 1e-12 * max(1.0, abs(row[0])) or x > row[-1] + 1e-12 * max(
            1.0, abs(row[-1])
        ):
            raise OutOfRangeError(
                f"criterion {j}: level {x} outside [{row[0]}, {row[-1]}]"
            )
        for k in range(len(row) - 2):
            if x < row[k + 1]:
                return k
        return len(row) - 2

    def interpolation_coefficients(self, j: int, x: float) -> list[tuple[int, float]]:
        """Breakpoint weights expressing v_j(x) as a convex combination.

        A level exactly on a breakpoint uses that breakpoint alone.
        """
        row = self.breakpoints[j]
        k = self.segment_index(j, x)
        lo, hi = row[k], row[k + 1]
        t = (x - lo) / (hi - lo)
        if t <= 0.0:
            return [(k, 1.0)]
        if t >= 1.0:
            return [(k + 1, 1.0)]
        return [(k, 1.0 - t), (k + 1, t)]


def build_grid(
    matrix: PerformanceMatrix, segments: int | Sequence[int]
) -> BreakpointGrid:
    """Equally spaced breakpoints over each criterion range.

    ``segments`` is a single count applied to every criterion or one count per
    criterion. Cost criteria share the same numeric range after re-orientation,
    so the grid is identical in both orientations.
    """
    if isinstance(segments, int):
        counts = [segments] * matrix.n
    else:
        counts = [int(s) for s in segments]
        if len(counts) != matrix.n:
            raise ValidationError(
                f"{len(counts)} segment counts for {matrix.n} criteria"
            )
    rows = []
    for j, crit in enumerate(matrix.criteria):
        s = counts[j]
        if s < 1:
            raise ValidationError(f"criterion {crit.name!r}: segments must be >= 1")
        rows.append(tuple(np.linspace(crit.lower, crit.upper, s + 1)))
    return BreakpointGrid(tuple(rows))


@dataclass(frozen=True)
class PiecewiseValueModel:
    """Breakpoint values of the additive model, normalized so that the
    all-upper profile scores 1 and every lower anchor scores 0."""

    grid: BreakpointGrid
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        vals = tuple(tuple(float(v) for v in row) for row in self.values)
        if len(vals) != self.grid.n:
            raise ValidationError(
                f"{len(vals)} value rows for {self.grid.n} criteria"
            )
        total = 0.0
        for j, row in enumerate(vals):
            if len(row) != len(self.grid.breakpoints[j]):
                raise ValidationError(
                    f"criterion {j}: {len(row)} values for "
                    f"{len(self.grid.breakpoints[j])} breakpoints"
                )
            if abs(row[0]) > VALUE_TOL:
                raise ValidationError(f"criterion {j}: lower anchor not 0")
            for k in range(len(row) - 1):
                if row[k + 1] < row[k] - VALUE_TOL:
                    raise ValidationError(f"criterion {j}: values decrease at {k}")
            if row[-1] < -VALUE_TOL or row[-1] > 1 + VALUE_TOL:
                raise ValidationError(f"criterion {j}: weight outside [0, 1]")
            total += row[-1]
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"weights sum to {total}, expected 1")
        object.__setattr__(self, "values", vals)

    @property
    def weights(self) -> tuple[float, ...]:
        """Implicit criterion weights: the value at each upper anchor."""
        return tuple(row[-1] for row in self.values)


def evaluate_attribute(model: PiecewiseValueModel, j: int, x: float) -> float:
    """Piecewise-linear attribute value at internal level x; exact at breakpoints."""
    coeffs = model.grid.interpolation_coefficients(j, x)
    return sum(c * model.values[j][k] for k, c in coeffs)


def evaluate_global(model: PiecewiseValueModel, levels: Sequence[float]) -> float:
    """Sum of attribute values for an internal-orientation consequence vector."""
    if len(levels) != model.grid.n:
        raise ValidationError(
            f"{len(levels)} levels for {model.grid.n} criteria"
        )
    return sum(evaluate_attribute(model, j, x) for j, x in enumerate(levels))


def pareto_dominates(matrix: PerformanceMatrix, i: int, i2: int) -> bool:
    """True iff row i weakly beats row i2 on every criterion, strictly on one.

    Comparison runs in benefit orientation.
    """
    if i == i2:
        raise ValidationError("pareto_dominates needs two distinct rows")
    a = matrix.internal_levels[i]
    b = matrix.internal_levels[i2]
    return bool(np.all(a >= b) and np.any(a > b))


@dataclass(frozen=True)
class ComparisonSet:
    """Best-to-others and others-to-worst judgments over a reference set.

    ``reference`` holds matrix indices in presentation order. Judgments are
    reals or (lower, upper) intervals on the 1-9 scale. The best-vs-worst
    comparison appears twice (as ``bo[worst]`` and ``ow[best]``); formulas
    that need a single a_BW read ``bo[worst]``.
    """

    reference: tuple[int, ...]
    best: int
    worst: int
    bo: Mapping[int, Judgment]
    ow: Mapping[int, Judgment]

    def __post_init__(self) -> None:
        ref = tuple(int(i) for i in self.reference)
        if len(set(ref)) != len(ref):
            raise ValidationError("reference indices repeat")
        if len(ref) < 2:
            raise ValidationError("reference set needs at least 2 alternatives")
        if self.best == self.worst:
            raise ValidationError("best and worst must differ")
        if self.best not in ref or self.worst not in ref:
            raise ValidationError("best and worst must be reference members")
        bo = {int(i): _check_judgment("bo", i, self.bo[i]) for i in ref}
        ow = {int(i): _check_judgment("ow", i, self.ow[i]) for i in ref}
        for name, mapping in (("bo", self.bo), ("ow", self.ow)):
            missing = [i for i in ref if i not in mapping]
            if missing:
                raise ValidationError(f"{name} missing judgments for {missing}")
        for name, mapping, pinned in (("bo", bo, self.best), ("ow", ow, self.worst)):
            j = mapping[pinned]
            lo, hi = (j, j) if isinstance(j, float) else j
            if lo != 1.0 or hi != 1.0:
                raise ValidationError(
                    f"{name}[{pinned}] is the self-comparison and must be 1"
                )
        object.__setattr__(self, "reference", ref)
        object.__setattr__(self, "best", int(self.best))
        object.__setattr__(self, "worst", int(self.worst))
        object.__setattr__(self, "bo", dict(bo))
        object.__setattr__(self, "ow", dict(ow))

    @property
    def size(self) -> int:
        return len(self.reference)

    @property
    def is_real_valued(self) -> bool:
        return all(
            isinstance(v, float) for v in list(self.bo.values()) + list(self.ow.values())
        )

    @property
    def a_bw(self) -> Judgment:
        return self.bo[self.worst]

    def as_intervals(self) -> "ComparisonSet":
        """Widen real judgments into degenerate intervals."""
        widen = lambda v: v if isinstance(v, tuple) else (v, v)
        return ComparisonSet(
            self.reference,
            self.best,
            self.worst,
            {i: widen(v) for i, v in self.bo.items()},
            {i: widen(v) for i, v in self.ow.items()},
        )

    def real_values(self) -> tuple[dict[int, float], dict[int, float]]:
        if not self.is_real_valued:
            raise ValidationError("comparison set holds interval judgments")
        return dict(self.bo), dict(self.ow)  # type: ignore[arg-type]


def _check_judgment(name: str, i: int, value: Judgment) -> Judgment:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        v = float(value)
        if not SCALE_MIN <= v <= SCALE_MAX:
            raise ValidationError(
                f"{name}[{i}] = {v} outside the [{SCALE_MIN:g}, {SCALE_MAX:g}] scale"
            )
        return v
    if isinstance(value, (tuple, list)) and len(value) == 2:
        lo, hi = float(value[0]), float(value[1])
        if lo > hi:
            raise ValidationError(f"{name}[{i}]: interval [{lo}, {hi}] inverted")
        if lo < SCALE_MIN or hi > SCALE_MAX:
            raise ValidationError(
                f"{name}[{i}]: interval [{lo}, {hi}] outside the scale"
            )
        return (lo, hi)
    raise ValidationError(f"{name}[{i}]: judgment must be a number or a 2-interval")
