"""Shared generators: hidden-model oracles, random instances, and the
published comparison vectors used across the suite."""

from __future__ import annotations

import numpy as np

from bwd.model import (
    BreakpointGrid,
    ComparisonSet,
    PerformanceMatrix,
    PiecewiseValueModel,
    build_grid,
    evaluate_global,
)


def random_matrix(
    rng: np.random.Generator, m: int, n: int, unit_ranges: bool = True
) -> PerformanceMatrix:
    levels = rng.uniform(0.0, 1.0, (m, n))
    ranges = [(0.0, 1.0)] * n if unit_ranges else None
    return PerformanceMatrix.from_levels(
        [f"a{i}" for i in range(m)],
        levels,
        [f"c{j}" for j in range(n)],
        ranges=ranges,
    )


def random_model(rng: np.random.Generator, grid: BreakpointGrid) -> PiecewiseValueModel:
    """A valid hidden model: random positive weights, random increasing
    breakpoint values per criterion."""
    weights = rng.dirichlet(np.ones(grid.n) * 2.0)
    rows = []
    for j in range(grid.n):
        inc = rng.uniform(0.05, 1.0, grid.segments(j))
        vals = np.concatenate([[0.0], np.cumsum(inc)])
        vals = vals / vals[-1] * weights[j]
        rows.append(tuple(float(v) for v in vals))
    return PiecewiseValueModel(grid, tuple(rows))


def consistent_instance(
    rng: np.random.Generator,
    m: int,
    n: int,
    s: int,
    refsize: int,
    min_gap: float = 1e-3,
):
    """Instance whose judgments are computed exactly from a hidden model.

    Regenerates until every judged ratio lands inside [1, 9] without clipping
    and reference values are separated, so ratios are well defined and the
    reference order is unambiguous.
    """
    for _ in range(500):
        matrix = random_matrix(rng, m, n)
        grid = build_grid(matrix, s)
        hidden = random_model(rng, grid)
        values = [
            evaluate_global(hidden, matrix.internal_levels[i]) for i in range(m)
        ]
        ref = sorted(rng.choice(m, size=refsize, replace=False).tolist())
        ranked = sorted(ref, key=lambda i: -values[i])
        best, worst = ranked[0], ranked[-1]
        if values[worst] < 5e-3:
            continue
        if values[best] / values[worst] > 9.0:
            continue
        if any(
            abs(values[ranked[k]] - values[ranked[k + 1]]) < min_gap
            for k in range(len(ranked) - 1)
        ):
            continue
        bo = {i: values[best] / values[i] for i in ref}
        ow = {i: values[i] / values[worst] for i in ref}
        comp = ComparisonSet(tuple(ref), best, worst, bo, ow)
        return matrix, grid, hidden, values, comp
    raise RuntimeError("could not generate a clip-free instance")


def noisy_instance(rng: np.random.Generator, m: int, n: int, s: int, refsize: int):
    """Instance with arbitrary (usually incompatible) judgments."""
    matrix = random_matrix(rng, m, n)
    grid = build_grid(matrix, s)
    ref = sorted(rng.choice(m, size=refsize, replace=False).tolist())
    best, worst = ref[0], ref[-1]
    bo = {
        i: 1.0 if i == best else float(np.round(rng.uniform(1, 9), 3)) for i in ref
    }
    ow = {
        i: 1.0 if i == worst else float(np.round(rng.uniform(1, 9), 3)) for i in ref
    }
    comp = ComparisonSet(tuple(ref), best, worst, bo, ow)
    return matrix, grid, comp


def widen(rng: np.random.Generator, comp: ComparisonSet) -> ComparisonSet:
    """Random enclosing intervals around real-valued judgments."""

    def spread(i: int, v: float, pinned: int) -> tuple[float, float]:
        if i == pinned:
            return (1.0, 1.0)
        lo = max(1.0, v - float(rng.uniform(0.0, 1.0)))
        hi = min(9.0, v + float(rng.uniform(0.0, 1.0)))
        return (lo, hi)

    bo = {i: spread(i, float(v), comp.best) for i, v in comp.bo.items()}
    ow = {i: spread(i, float(v), comp.worst) for i, v in comp.ow.items()}
    return ComparisonSet(comp.reference, comp.best, comp.worst, bo, ow)


# -- published comparison vectors (reference order: Estonia, Hungary, Latvia,
#    Greece, Moldova; best = Estonia, worst = Moldova) ------------------------

REFERENCE_IDS = ("Estonia", "Hungary", "Latvia", "Greece", "Moldova")


def table1_comparisons(indices=(0, 1, 2, 3, 4)) -> ComparisonSet:
    e, h, l, g, m = indices
    return ComparisonSet(
        tuple(indices),
        best=e,
        worst=m,
        bo={e: 1.0, h: 3.0, l: 4.0, g: 5.0, m: 8.0},
        ow={e: 8.0, h: 5.0, l: 3.0, g: 4.0, m: 1.0},
    )


def table4_comparisons(indices=(0, 1, 2, 3, 4)) -> ComparisonSet:
    e, h, l, g, m = indices
    return ComparisonSet(
        tuple(indices),
        best=e,
        worst=m,
        bo={e: 1.0, h: 3.0, l: 4.0, g: 4.0, m: 8.0},
        ow={e: 8.0, h: 5.0, l: 3.0, g: 3.0, m: 1.0},
    )


def table5_comparisons(indices=(0, 1, 2, 3, 4)) -> ComparisonSet:
    e, h, l, g, m = indices
    return ComparisonSet(
        tuple(indices),
        best=e,
        worst=m,
        bo={e: (1, 1), h: (2, 3), l: (3, 4), g: (4, 5), m: (7, 9)},
        ow={e: (7, 9), h: (4, 5), l: (2, 4), g: (3, 4), m: (1, 1)},
    )
