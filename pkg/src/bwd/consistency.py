"""Ordinal and cardinal consistency analysis of real-valued comparison sets.

Consistency is intrinsic to the judgments (unlike the model-dependent fit
quality): ordinally, the two vectors must not reverse any pairwise ranking;
cardinally, products bo[i] * ow[i] should stay close to the best-to-worst
judgment. Thresholds for the cardinal ratio depend on the reference-set size
and the best-to-worst value; only the (5, 8) entry ships as a default and
other cells come from a user-supplied CSV.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .model import ComparisonSet, ValidationError

#: Consistency-ratio verdicts.
PASS, FAIL, UNKNOWN = "pass", "fail", "unknown-threshold"

#: Search resolution for revision ranges.
_SWEEP_STEP = 0.01
_REFINE_TOL = 1e-4


@dataclass(frozen=True)
class ThresholdTable:
    """Cardinal-consistency thresholds keyed by (reference size, a_BW)."""

    entries: dict[tuple[int, int], float]

    def __post_init__(self) -> None:
        clean = {}
        for (size, abw), thr in self.entries.items():
            thr = float(thr)
            if not 0 < thr <= 1:
                raise ValidationError(
                    f"threshold for ({size}, {abw}) must be in (0, 1], got {thr}"
                )
            clean[(int(size), int(abw))] = thr
        object.__setattr__(self, "entries", clean)

    @classmethod
    def default(cls) -> "ThresholdTable":
        # The single published value used in this package's reference
        # scenario; everything else must be supplied by the user.
        return cls({(5, 8): 0.284})

    @classmethod
    def from_csv(cls, path: str | Path) -> "ThresholdTable":
        entries = {}
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            required = {"size", "a_bw", "threshold"}
            if reader.fieldnames is None or not required <= set(reader.fieldnames):
                raise ValidationError(
                    f"threshold table needs columns {sorted(required)}"
                )
            for lineno, row in enumerate(reader, start=2):
                try:
                    entries[(int(row["size"]), int(row["a_bw"]))] = float(
                        row["threshold"]
                    )
                except (TypeError, ValueError) as exc:
                    raise ValidationError(
                        f"{path}: line {lineno}: {exc}"
                    ) from None
        return cls(entries)

    def lookup(self, size: int, a_bw: float) -> float | None:
        if abs(a_bw - round(a_bw)) > 1e-9:
            return None
        return self.entries.get((int(size), int(round(a_bw))))


@dataclass(frozen=True)
class ConsistencyReport:
    """Everything the revision loop needs in one place.

    ``violations`` is indexed by reference-order position; entries are 0
    (consistent), 0.5 (weak reversal) or 1 (reversal).
    """

    reference: tuple[int, ...]
    or_value: float
    or_by_alt: tuple[float, ...]
    violations: np.ndarray
    cr_value: float
    cr_by_alt: tuple[float, ...]
    threshold: float | None
    or_verdict: str
    cr_verdict: str


def _step(product: float, d1: float, d2: float) -> float:
    if product < 0:
        return 1.0
    if product == 0 and (d1 != 0 or d2 != 0):
        return 0.5
    return 0.0


def _vectors(c: ComparisonSet) -> tuple[list[float], list[float]]:
    if not c.is_real_valued:
        raise ValidationError(
            "consistency analysis is defined for real-valued judgments only"
        )
    bo = [float(c.bo[i]) for i in c.reference]
    ow = [float(c.ow[i]) for i in c.reference]
    return bo, ow


def _violations(bo: list[float], ow: list[float]) -> np.ndarray:
    r = len(bo)
    out = np.zeros((r, r))
    for i in range(r):
        for k in range(r):
            d1 = bo[k] - bo[i]
            d2 = ow[i] - ow[k]
            out[i, k] = _step(d1 * d2, d1, d2)
    return out


def ordinal_ratio(c: ComparisonSet) -> tuple[float, tuple[float, ...], np.ndarray]:
    """Share of rank reversals per alternative; the overall ratio is the max.

    Entry (i, k) flags that alternative i's judgments reverse order against
    alternative k's (1) or tie where they should not (0.5). Each row averages
    over the reference-set size.
    """
    bo, ow = _vectors(c)
    viol = _violations(bo, ow)
    or_i = tuple(float(v) for v in viol.sum(axis=1) / c.size)
    return max(or_i), or_i, viol


def cardinal_ratio(c: ComparisonSet) -> tuple[float, tuple[float, ...]]:
    """Largest normalized deviation of bo[i] * ow[i] from the best-to-worst
    judgment. Degenerate below a_BW = 2, where the scale leaves no room for
    deviation: the ratio is defined as 0 there.
    """
    bo, ow = _vectors(c)
    a_bw = float(c.bo[c.worst])
    r = c.size
    if a_bw < 2:
        return 0.0, tuple([0.0] * r)
    denom = abs(a_bw * a_bw - a_bw)
    devs = tuple(abs(bo[i] * ow[i] - a_bw) / denom for i in range(r))
    return max(devs), devs


def check_thresholds(
    or_value: float,
    cr_value: float,
    size: int,
    a_bw: float,
    table: ThresholdTable,
) -> tuple[str, str, float | None]:
    """Ordinal verdict passes only at exactly zero; cardinal passes at or
    below the table threshold, or reports unknown-threshold when the table
    has no matching cell."""
    or_verdict = PASS if or_value == 0.0 else FAIL
    threshold = table.lookup(size, a_bw)
    if threshold is None:
        return or_verdict, UNKNOWN, None
    return or_verdict, PASS if cr_value <= threshold else FAIL, threshold


def build_report(
    c: ComparisonSet, table: ThresholdTable | None = None
) -> ConsistencyReport:
    table = table or ThresholdTable.default()
    or_value, or_i, viol = ordinal_ratio(c)
    cr_value, devs = cardinal_ratio(c)
    a_bw = float(c.bo[c.worst])
    or_verdict, cr_verdict, threshold = check_thresholds(
        or_value, cr_value, c.size, a_bw, table
    )
    return ConsistencyReport(
        reference=c.reference,
        or_value=or_value,
        or_by_alt=or_i,
        violations=viol,
        cr_value=cr_value,
        cr_by_alt=devs,
        threshold=threshold,
        or_verdict=or_verdict,
        cr_verdict=cr_verdict,
    )


@dataclass(frozen=True)
class RevisionRange:
    """Acceptable stand-alone revisions for one judgment position.

    ``interval`` is None when no single-value change can repair the position.
    """

    vector: str  # "bo" | "ow"
    index: int  # matrix index of the alternative
    current: float
    interval: tuple[float, float] | None


@dataclass(frozen=True)
class RevisionRanges:
    ranges: tuple[RevisionRange, ...]
    threshold_known: bool

    def get(self, vector: str, index: int) -> RevisionRange:
        for r in self.ranges:
            if r.vector == vector and r.index == index:
                return r
        raise KeyError((vector, index))


def revision_ranges(
    c: ComparisonSet, table: ThresholdTable | None = None
) -> RevisionRanges:
    """Per-judgment interval of values that, holding every other judgment
    fixed, leave the alternative's row of the violation matrix at zero and
    keep the cardinal ratio within the threshold.

    The threshold is resolved once from the input set's (size, a_BW) cell;
    when unknown, ranges are computed against a cardinal bound of 1 and the
    result is flagged. Self-comparisons are pinned to [1, 1].
    """
    table = table or ThresholdTable.default()
    bo, ow = _vectors(c)
    ref = c.reference
    r = c.size
    b_pos = ref.index(c.best)
    w_pos = ref.index(c.worst)
    threshold = table.lookup(r, bo[w_pos])
    known = threshold is not None
    limit = threshold if known else 1.0

    def acceptable(vec: str, pos: int, v: float) -> bool:
        nbo = bo.copy()
        now = ow.copy()
        (nbo if vec == "bo" else now)[pos] = v
        for k in range(r):
            d1 = nbo[k] - nbo[pos]
            d2 = now[pos] - now[k]
            if _step(d1 * d2, d1, d2) != 0.0:
                return False
        a_bw = nbo[w_pos]
        if a_bw >= 2:
            denom = abs(a_bw * a_bw - a_bw)
            for k in range(r):
                if abs(nbo[k] * now[k] - a_bw) / denom > limit:
                    return False
        return True

    npoints = int(round((9.0 - 1.0) / _SWEEP_STEP))
    grid = [1.0 + k / 100.0 for k in range(npoints + 1)]

    def sweep(vec: str, pos: int, current: float) -> tuple[float, float] | None:
        flags = [acceptable(vec, pos, v) for v in grid]
        runs = []
        start = None
        for idx, f in enumerate(flags + [False]):
            if f and start is None:
                start = idx
            elif not f and start is not None:
                runs.append((start, idx - 1))
                start = None
        if not runs:
            return None
        containing = [
            run for run in runs if grid[run[0]] <= current <= grid[run[1]]
        ]
        if containing:
            lo_i, hi_i = containing[0]
        else:
            lo_i, hi_i = max(runs, key=lambda run: (run[1] - run[0], -run[0]))
        lo = grid[lo_i]
        if lo_i > 0:
            bad, good = grid[lo_i - 1], lo
            while good - bad > _REFINE_TOL:
                mid = (good + bad) / 2
                if acceptable(vec, pos, mid):
                    good = mid
                else:
                    bad = mid
            lo = good
        hi = grid[hi_i]
        if hi_i < len(grid) - 1:
            good, bad = hi, grid[hi_i + 1]
            while bad - good > _REFINE_TOL:
                mid = (good + bad) / 2
                if acceptable(vec, pos, mid):
                    good = mid
                else:
                    bad = mid
            hi = good
        return (lo, hi)

    out = []
    for vec, vals, pinned in (("bo", bo, b_pos), ("ow", ow, w_pos)):
        for pos, idx in enumerate(ref):
            current = vals[pos]
            if pos == pinned:
                interval: tuple[float, float] | None = (1.0, 1.0)
            else:
                interval = sweep(vec, pos, current)
            out.append(RevisionRange(vec, idx, current, interval))
    return RevisionRanges(tuple(out), known)
