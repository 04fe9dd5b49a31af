"""Piecewise-linear additive value models: grids, evaluation, dominance.

Walks through the core types on the bundled carrier-selection data: building
a breakpoint grid over each criterion range, scoring alternatives with a
hand-made value model, and checking Pareto dominance (which any monotone
model must respect).
"""

from pathlib import Path

from bwd import (
    PiecewiseValueModel,
    build_grid,
    evaluate_attribute,
    evaluate_global,
    ingest_matrix,
    pareto_dominates,
)

DATA = Path(__file__).parent / "data" / "carriers.csv"


def main() -> None:
    matrix = ingest_matrix(DATA)
    print(f"{matrix.m} carriers on {matrix.n} criteria:")
    for crit in matrix.criteria:
        print(f"  {crit.name}: {crit.direction}, range [{crit.lower}, {crit.upper}]")

    # Two segments per criterion: one splitting point midway.
    grid = build_grid(matrix, 2)
    print("\nbreakpoints (internal, benefit-oriented):")
    for j, crit in enumerate(matrix.criteria):
        pts = ", ".join(f"{x:g}" for x in grid.breakpoints[j])
        print(f"  {crit.name}: {pts}")

    # A value model is one breakpoint value per criterion and point; the
    # values at the upper anchors are the implicit criterion weights.
    model = PiecewiseValueModel(
        grid,
        (
            (0.0, 0.25, 0.40),  # reliability: steep early gains
            (0.0, 0.20, 0.25),  # transit time (internally re-oriented)
            (0.0, 0.05, 0.20),  # price
            (0.0, 0.05, 0.15),  # coverage
        ),
    )
    print(f"\nimplicit weights: {[round(w, 2) for w in model.weights]}")

    internal = matrix.internal_levels
    print("\nglobal values under this model:")
    scored = sorted(
        ((evaluate_global(model, internal[i]), matrix.ids[i]) for i in range(matrix.m)),
        reverse=True,
    )
    for value, name in scored:
        print(f"  {name}: {value:.4f}")

    # Attribute values interpolate linearly between breakpoints.
    j = 0
    x = 80.0
    print(
        f"\nreliability {x:g} maps to attribute value "
        f"{evaluate_attribute(model, j, x):.4f}"
    )

    print("\nPareto dominance (in benefit orientation):")
    found = False
    for i in range(matrix.m):
        for k in range(matrix.m):
            if i != k and pareto_dominates(matrix, i, k):
                found = True
                print(f"  {matrix.ids[i]} dominates {matrix.ids[k]}")
    if not found:
        print("  none")


if __name__ == "__main__":
    main()
