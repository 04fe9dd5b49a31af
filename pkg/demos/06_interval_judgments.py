"""Interval judgments: trading precision for credibility.

When the expert gives bounds instead of point values, each comparison becomes
a band the model must hit, relaxed by the same shared slack. Enclosing
intervals can only fit better (never worse) than the reals they contain, and
usually leave more models compatible, so rank ranges widen and the necessary
relation gets sparser.
"""

from pathlib import Path

from bwd import (
    ComparisonSet,
    build_grid,
    extreme_ranks,
    imprecision_index,
    ingest_matrix,
    necessary_relation,
    solve_bwd,
    solve_ibwd,
)

DATA = Path(__file__).parent / "data" / "carriers.csv"


def main() -> None:
    matrix = ingest_matrix(DATA)
    grid = build_grid(matrix, 2)
    ref = tuple(
        matrix.index_of(c) for c in ("Nordline", "Cargomar", "Transium", "Veloway")
    )
    best, worst = matrix.index_of("Nordline"), matrix.index_of("Transium")
    velo, cargo = matrix.index_of("Veloway"), matrix.index_of("Cargomar")

    real = ComparisonSet(
        ref, best, worst,
        bo={best: 1, velo: 3, cargo: 4, worst: 7},
        ow={best: 7, velo: 4, cargo: 3, worst: 1},
    )
    intervals = ComparisonSet(
        ref, best, worst,
        bo={best: (1, 1), velo: (2, 4), cargo: (3, 5), worst: (6, 8)},
        ow={best: (6, 8), velo: (3, 5), cargo: (2, 4), worst: (1, 1)},
    )

    res_real = solve_bwd(matrix, grid, real)
    res_int = solve_ibwd(matrix, grid, intervals)
    print(f"real-valued fit:    xi*   = {res_real.xi_star:.6f}")
    print(f"interval fit:       xi*_I = {res_int.xi_star:.6f}")
    print("(enclosing intervals never fit worse than the reals they contain)")

    for label, comp, res in (
        ("real", real, res_real),
        ("interval", intervals, res_int),
    ):
        rel = necessary_relation(matrix, grid, comp, res.xi_star)
        ranges = extreme_ranks(
            matrix, grid, comp, res.xi_star, pair_bounds=rel.delta
        )
        u = imprecision_index(ranges)
        print(
            f"\n{label}: {len(rel.strict)} settled pairs, U = {u:.5f}"
        )
        for r in sorted(ranges, key=lambda r: (r.best_rank, r.worst_rank)):
            bar = "#" * (r.worst_rank - r.best_rank + 1)
            pad = " " * (r.best_rank - 1)
            print(f"  {r.alt_id:<11} |{pad}{bar}")


if __name__ == "__main__":
    main()
