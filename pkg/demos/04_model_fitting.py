"""Fitting the value model to best/worst judgments.

The fit minimizes the largest gap between judged ratios and the model's
values over the reference set. A zero optimum means some monotone normalized
model reproduces the judgments exactly; a positive optimum quantifies the
residual tension. The representative model averages the per-criterion
weight-maximizing optima, and its scores rank the full set of alternatives.
"""

from pathlib import Path

from bwd import ComparisonSet, build_grid, ingest_matrix, solve_bwd, to_lp_text
from bwd.disagg import build_program

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
    print(f"smallest attainable deviation: xi* = {result.xi_star:.6f}")
    if result.xi_star > 1e-9:
        print("  (no monotone normalized model matches the ratios exactly)")

    print("\nrepresentative model weights:")
    for crit, w in zip(matrix.criteria, result.representative.weights):
        print(f"  {crit.name}: {w:.3f}")

    print("\nfull ranking (ties share a line):")
    for pos, group in enumerate(result.ranking, start=1):
        label = " = ".join(group)
        print(f"  {pos}. {label}  value {result.values[group[0]]:.4f}")

    # The underlying linear program can be dumped for external cross-checks.
    text = to_lp_text(build_program(matrix, grid, comparisons), "carrier fit")
    print(f"\nLP text dump: {len(text.splitlines())} lines, starts with:")
    for line in text.splitlines()[:4]:
        print(f"  {line}")


if __name__ == "__main__":
    main()
