"""The consistency loop: check judgments, locate reversals, revise, recheck.

Best/worst comparisons are checked before any model is fit, because their
coherence is a property of the judgments alone. The ordinal ratio flags rank
reversals between the two vectors; the cardinal ratio measures how far the
products bo[i] * ow[i] drift from the best-to-worst judgment. Revision ranges
tell the expert how far a single judgment may move while keeping its row
clean and the cardinal ratio under the threshold.
"""

from pathlib import Path

from bwd import (
    ComparisonSet,
    ThresholdTable,
    build_report,
    ingest_matrix,
    revision_ranges,
)

DATA = Path(__file__).parent / "data" / "carriers.csv"


def show(report, matrix, ref):
    print(f"  OR = {report.or_value:.3f} [{report.or_verdict}]")
    print(f"  CR = {report.cr_value:.3f} [{report.cr_verdict}]")
    names = [matrix.ids[i] for i in ref]
    for pos, row in enumerate(report.violations):
        hits = [names[k] for k, v in enumerate(row) if v != 0.0]
        if hits:
            print(f"  {names[pos]} conflicts with: {', '.join(hits)}")


def main() -> None:
    matrix = ingest_matrix(DATA)
    table = ThresholdTable({(4, 7): 0.3})  # analyst-supplied cell

    ref = tuple(
        matrix.index_of(c) for c in ("Nordline", "Cargomar", "Transium", "Veloway")
    )
    best, worst = matrix.index_of("Nordline"), matrix.index_of("Transium")

    # First pass: the expert slips on Veloway vs Cargomar (the two vectors
    # order them oppositely).
    first = ComparisonSet(
        ref,
        best,
        worst,
        bo={best: 1, matrix.index_of("Veloway"): 3,
            matrix.index_of("Cargomar"): 4, worst: 7},
        ow={best: 7, matrix.index_of("Veloway"): 2,
            matrix.index_of("Cargomar"): 3, worst: 1},
    )
    print("first elicitation:")
    show(build_report(first, table), matrix, ref)

    ranges = revision_ranges(first, table)
    print("\nadmissible single-judgment revisions:")
    for entry in ranges.ranges:
        name = matrix.ids[entry.index]
        if entry.interval is None:
            print(f"  {entry.vector} {name}: no single change repairs this row")
        else:
            lo, hi = entry.interval
            print(
                f"  {entry.vector} {name}: {entry.current:g} may move to "
                f"[{lo:.2f}, {hi:.2f}]"
            )

    # The expert raises Veloway's others-to-worst judgment into its range.
    revised = ComparisonSet(
        ref,
        best,
        worst,
        bo=dict(first.bo),
        ow={**first.ow, matrix.index_of("Veloway"): 4},
    )
    print("\nafter revision (Veloway ow: 2 -> 4):")
    show(build_report(revised, table), matrix, ref)


if __name__ == "__main__":
    main()
