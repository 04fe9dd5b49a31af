"""Robustness analysis over the optimal compatible models: the necessary
preference relation, extreme attainable ranks, the imprecision index, and the
Hasse reduction of the necessary relation.

Everything here searches inside the polytope of models whose deviation stays
within the previously solved optimum (plus a hair of slack), so results are
statements about *every* optimal model, not about one arbitrary pick.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import (
    BreakpointGrid,
    ComparisonSet,
    PerformanceMatrix,
    ValidationError,
)
from .optimizer import LinearProgram, SolverError, solve_lp, solve_milp
from .disagg import (
    EPS_OPT,
    _check_inputs,
    add_judgment_constraints,
    add_model_variables,
    value_coeffs,
)

#: A value difference counts as strict preference only below this.
STRICT_TOL = 1e-7
#: Margin separating "outranks" from "tied" in the rank programs.
RANK_EPS = 1e-6


@dataclass(frozen=True)
class NecessaryRelation:
    """Strict pairs (q, p): alternative q beats p in every optimal model.

    ``delta[(p, q)]`` is the largest achievable value difference V(p) - V(q);
    the pair is strict exactly when that maximum is still negative.
    """

    strict: frozenset[tuple[int, int]]
    delta: dict[tuple[int, int], float]

    def holds(self, q: int, p: int) -> bool:
        return (q, p) in self.strict


@dataclass(frozen=True)
class RankRange:
    alt_id: str
    best_rank: int
    worst_rank: int
    outrank_count: int
    dominance_count: int

    def __post_init__(self) -> None:
        if self.best_rank > self.worst_rank:
            raise SolverError(
                f"{self.alt_id}: inverted rank range "
                f"[{self.best_rank}, {self.worst_rank}]"
            )

    @property
    def width(self) -> int:
        return self.worst_rank - self.best_rank


def _optimal_set_lp(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
    xi_star: float,
) -> LinearProgram:
    lp = LinearProgram()
    add_model_variables(lp, grid)
    add_judgment_constraints(lp, matrix, grid, comparisons, xi_star + EPS_OPT)
    return lp


def _pair_delta(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
    xi_star: float,
    p: int,
    q: int,
) -> float:
    internal = matrix.internal_levels
    lp = _optimal_set_lp(matrix, grid, comparisons, xi_star)
    objective = dict(value_coeffs(grid, internal[p]))
    for name, c in value_coeffs(grid, internal[q]).items():
        objective[name] = objective.get(name, 0.0) - c
    lp.set_objective("max", objective)
    sol = solve_lp(lp)
    if sol.status != "optimal":
        raise SolverError(f"pair ({p}, {q}) solve was {sol.status}")
    return float(sol.objective)


def necessary_relation(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
    xi_star: float,
) -> NecessaryRelation:
    """Maximize V(p) - V(q) over the optimal set for every ordered pair; a
    negative maximum certifies q's superiority across all optimal models."""
    _check_inputs(matrix, grid, comparisons)
    delta: dict[tuple[int, int], float] = {}
    strict = set()
    for p in range(matrix.m):
        for q in range(matrix.m):
            if p == q:
                continue
            d = _pair_delta(matrix, grid, comparisons, xi_star, p, q)
            delta[(p, q)] = d
            if d < -STRICT_TOL:
                strict.add((q, p))
    _validate_relation(strict, delta)
    return NecessaryRelation(frozenset(strict), delta)


def _validate_relation(
    strict: set[tuple[int, int]], delta: dict[tuple[int, int], float]
) -> None:
    for q, p in strict:
        if q == p:
            raise SolverError("necessary relation is not irreflexive")
        if (p, q) in strict:
            raise SolverError(f"necessary relation asymmetry broken on ({p}, {q})")
    for q, p in strict:
        for r, p2 in strict:
            if p == r and (q, p2) not in strict:
                raise SolverError(
                    f"necessary relation transitivity broken: "
                    f"{q} > {p} > {p2} but not {q} > {p2}"
                )


#: Safety margin when classifying pairs from LP bounds; borderline pairs stay
#: in the integer program.
_BOUND_MARGIN = 1e-9


def _rank_counts(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
    xi_star: float,
    i: int,
    mirrored: bool,
    bounds: dict[tuple[int, int], float],
) -> int:
    """Count how many alternatives can simultaneously sit below (or, when
    mirrored, above) alternative i across the optimal set.

    Pair bounds decide most candidates outright: when even the most favorable
    model cannot move the pair the right way the indicator is 0, and when
    every model already satisfies the ordering the indicator is 1 at no cost.
    Only genuinely ambiguous pairs enter the integer program.
    """
    internal = matrix.internal_levels
    mine = value_coeffs(grid, internal[i])
    always = 0
    ambiguous = []
    for h in range(matrix.m):
        if h == i:
            continue
        # maxrank: z=1 needs V(i) >= V(h) - eps; mirrored: V(h) >= V(i) - eps.
        attainable = bounds[(h, i) if mirrored else (i, h)]
        slack_side = bounds[(i, h) if mirrored else (h, i)]
        if attainable < -RANK_EPS - _BOUND_MARGIN:
            continue  # no optimal model admits this ordering
        if slack_side <= RANK_EPS - _BOUND_MARGIN:
            always += 1  # ordering holds across the whole optimal set
            continue
        ambiguous.append(h)
    if not ambiguous:
        return always

    lp = _optimal_set_lp(matrix, grid, comparisons, xi_star)
    for h in ambiguous:
        lp.add_variable(f"z{h}", 0.0, 1.0, binary=True)
        lp.add_variable(f"q{h}", 0.0, 1.0, binary=True)
        lp.add_constraint({f"z{h}": 1.0, f"q{h}": 1.0}, "=", 1.0)
        other = value_coeffs(grid, internal[h])
        coeffs: dict[str, float] = {}
        lead, trail = (other, mine) if mirrored else (mine, other)
        for name, c in lead.items():
            coeffs[name] = coeffs.get(name, 0.0) + c
        for name, c in trail.items():
            coeffs[name] = coeffs.get(name, 0.0) - c
        coeffs = {k: v for k, v in coeffs.items() if v != 0.0}
        coeffs[f"z{h}"] = RANK_EPS
        coeffs[f"q{h}"] = 1.0
        lp.add_constraint(coeffs, ">=", 0.0)
    lp.set_objective("max", {f"z{h}": 1.0 for h in ambiguous})
    sol = solve_milp(lp)
    if sol.status != "optimal":
        raise SolverError(f"rank program for {i} was {sol.status}")
    return always + int(round(sol.objective))


def extreme_ranks(
    matrix: PerformanceMatrix,
    grid: BreakpointGrid,
    comparisons: ComparisonSet,
    xi_star: float,
    pair_bounds: dict[tuple[int, int], float] | None = None,
) -> tuple[RankRange, ...]:
    """Best and worst attainable competition rank per alternative across the
    optimal set (two mixed-integer programs each).

    ``pair_bounds`` may carry the delta mapping of a previously computed
    necessary relation; missing pairs are bounded on demand.
    """
    _check_inputs(matrix, grid, comparisons)
    bounds = dict(pair_bounds) if pair_bounds else {}

    def fill(p: int, q: int) -> None:
        if (p, q) not in bounds:
            bounds[(p, q)] = _pair_delta(matrix, grid, comparisons, xi_star, p, q)

    out = []
    for i in range(matrix.m):
        for h in range(matrix.m):
            if h != i:
                fill(i, h)
                fill(h, i)
        outranked = _rank_counts(
            matrix, grid, comparisons, xi_star, i, False, bounds
        )
        dominated = _rank_counts(
            matrix, grid, comparisons, xi_star, i, True, bounds
        )
        out.append(
            RankRange(
                alt_id=matrix.ids[i],
                best_rank=matrix.m - outranked,
                worst_rank=dominated + 1,
                outrank_count=outranked,
                dominance_count=dominated,
            )
        )
    return tuple(out)


def imprecision_index(ranges: Sequence[RankRange]) -> float:
    """Mean rank-range width normalized by the worst possible spread."""
    m = len(ranges)
    if m < 2:
        raise ValidationError("imprecision index needs at least 2 alternatives")
    return sum(r.worst_rank - r.best_rank for r in ranges) / (m * (m - 1))


def hasse(
    rel: NecessaryRelation, ids: Sequence[str]
) -> list[tuple[str, str]]:
    """Transitive reduction of the necessary relation as (better, worse) id
    edges, sorted for stable output."""
    _validate_relation(set(rel.strict), rel.delta)
    strict = rel.strict
    edges = []
    for q, p in strict:
        if any((q, r) in strict and (r, p) in strict for r in range(len(ids))):
            continue
        edges.append((ids[q], ids[p]))
    return sorted(edges)


def hasse_dot(edges: Sequence[tuple[str, str]], ids: Sequence[str]) -> str:
    """Render the diagram in DOT, isolated nodes included."""

    def quote(s: str) -> str:
        return '"' + s.replace('"', r"\"") + '"'

    lines = ["digraph necessary {", "  rankdir=TB;"]
    for alt in ids:
        lines.append(f"  {quote(alt)};")
    for q, p in edges:
        lines.append(f"  {quote(q)} -> {quote(p)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def rank_ranges_csv(ranges: Sequence[RankRange]) -> str:
    lines = ["id,best_rank,worst_rank"]
    for r in ranges:
        lines.append(f"{r.alt_id},{r.best_rank},{r.worst_rank}")
    return "\n".join(lines) + "\n"
