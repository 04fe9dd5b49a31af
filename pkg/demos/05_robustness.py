"""Robustness: what holds across *every* optimal model, not just one.

The fitted optimum rarely pins a unique model, so single-model rankings can
mislead. The necessary relation keeps only pairwise conclusions valid for all
optimal models; extreme ranks bound where each alternative can land; the
imprecision index summarizes how much slack the ranking has.
"""

from pathlib import Path

from bwd import (
    ComparisonSet,
    build_grid,
    extreme_ranks,
    hasse,
    hasse_dot,
    imprecision_index,
    ingest_matrix,
    necessary_relation,
    solve_bwd,
)

DATA = Path(__file__).parent / "data" / "carriers.csv"


def main() -> None:
    matrix = ingest_matrix(DATA)
    grid = build_grid(matrix, 2)
    ref = tuple(
        matrix.index_of(c) for c in ("Nordline", "Cargomar", "Transium", "Veloway")
    )
    best, worst = matrix.index_of("Nordline"), matrix.index_of("Transium")
    comparisons = ComparisonSet(
        ref,
        best,
        worst,
        bo={best: 1, matrix.index_of("Veloway"): 3,
            matrix.index_of("Cargomar"): 4, worst: 7},
        ow={best: 7, matrix.index_of("Veloway"): 4,
            matrix.index_of("Cargomar"): 3, worst: 1},
    )

    result = solve_bwd(matrix, grid, comparisons)
    print(f"xi* = {result.xi_star:.6f}; exploring the optimal set...")

    relation = necessary_relation(matrix, grid, comparisons, result.xi_star)
    print(
        f"\nnecessary preferences: {len(relation.strict)} of "
        f"{matrix.m * (matrix.m - 1)} ordered pairs are settled"
    )

    ranges = extreme_ranks(
        matrix, grid, comparisons, result.xi_star, pair_bounds=relation.delta
    )
    print("attainable rank ranges:")
    for r in sorted(ranges, key=lambda r: (r.best_rank, r.worst_rank)):
        span = (
            f"rank {r.best_rank}"
            if r.width == 0
            else f"ranks {r.best_rank}-{r.worst_rank}"
        )
        print(f"  {r.alt_id}: {span}")
    print(f"imprecision index U = {imprecision_index(ranges):.5f}")

    edges = hasse(relation, matrix.ids)
    print(f"\nHasse diagram ({len(edges)} edges after transitive reduction):")
    for q, p in edges:
        print(f"  {q} -> {p}")

    out = Path(__file__).parent / "carriers_hasse.dot"
    out.write_text(hasse_dot(edges, matrix.ids))
    print(f"DOT file written to {out} (render with: dot -Tsvg {out.name})")


if __name__ == "__main__":
    main()
