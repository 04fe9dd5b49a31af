"""Choosing who to ask about: minimal covering, mutually non-dominated sets.

The expert will only compare a handful of alternatives, so the reference set
should (1) cover every segment of every criterion, (2) contain no pair where
one alternative dominates the other (such comparisons carry no trade-off
information), and (3) be as small as possible. This demo runs the selection,
shows the coverage bookkeeping, and augments the result by hand.
"""

import warnings
from pathlib import Path

from bwd import (
    InfeasibleSelection,
    augment_selection,
    build_grid,
    coverage_array,
    dominance_pairs,
    ingest_matrix,
    select_reference_set,
)

DATA = Path(__file__).parent / "data" / "carriers.csv"


def main() -> None:
    matrix = ingest_matrix(DATA)
    grid = build_grid(matrix, 2)
    cov = coverage_array(matrix, grid)
    dom = dominance_pairs(matrix)

    print("dominance pairs (excluded from joint membership):")
    for a, b in sorted(dom):
        print(f"  {matrix.ids[a]} <-> {matrix.ids[b]}")

    selection = select_reference_set(cov, dom, b=1)
    assert not isinstance(selection, InfeasibleSelection)
    names = [matrix.ids[i] for i in selection.indices]
    print(f"\nminimum covering set (every segment at least once): {names}")

    picked = cov[list(selection.indices)].sum(axis=0)
    print("coverage counts (criterion x segment):")
    for j, crit in enumerate(matrix.criteria):
        print(f"  {crit.name}: {' '.join(str(int(v)) for v in picked[j])}")

    # The analyst can widen the set to explore more of the ranking; the union
    # step re-validates non-dominance and warns instead of failing.
    extra = [matrix.index_of("Cargomar"), matrix.index_of("Veloway")]
    augmented = augment_selection(matrix, selection, extra)
    print(f"\nafter manual additions: {[matrix.ids[i] for i in augmented.indices]}")

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        augment_selection(matrix, selection, [matrix.index_of("Sudexpress"),
                                              matrix.index_of("Cargomar")])
        if caught:
            print(f"adding a dominated carrier warns: {caught[0].message}")

    # Demanding double coverage shows the structured infeasibility report.
    hard = select_reference_set(cov, dom, b=3)
    if isinstance(hard, InfeasibleSelection):
        print(f"\ntriple coverage is infeasible: {hard.message}")


if __name__ == "__main__":
    main()
