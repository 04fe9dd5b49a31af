"""Command-line workflow: reference-set selection, consistency checking,
model fitting, robustness reports, and the embedded service.

Exit codes: 0 ok, 1 validation error, 2 infeasible selection, 3 internal.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .consistency import ThresholdTable, build_report, revision_ranges
from .disagg import build_program, solve_bwd, solve_ibwd
from .model import ValidationError, build_grid
from .optimizer import SolverError, to_lp_text
from .refset import (
    InfeasibleSelection,
    augment_selection,
    coverage_array,
    dominance_pairs,
    select_reference_set,
)
from .robust import (
    RankRange,
    extreme_ranks,
    hasse,
    hasse_dot,
    imprecision_index,
    necessary_relation,
    rank_ranges_csv,
)
from .session import Session, WorkflowError, ingest_matrix


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _split_ids(arg: str | None) -> list[str]:
    if not arg:
        return []
    return [part.strip() for part in arg.split(",") if part.strip()]


def _parse_segments(arg: str) -> int | list[int]:
    parts = [p.strip() for p in arg.split(",")]
    if len(parts) == 1:
        return int(parts[0])
    return [int(p) for p in parts]


def _warn_overfit(segments: int | list[int], refsize: int) -> None:
    worst = segments if isinstance(segments, int) else max(segments)
    if worst > refsize:
        print(
            f"warning: {worst} segments against {refsize} reference "
            f"alternatives risks overfitting",
            file=sys.stderr,
        )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_refset(args: argparse.Namespace) -> int:
    matrix = ingest_matrix(args.matrix)
    segments = _parse_segments(args.segments)
    grid = build_grid(matrix, segments)
    cov = coverage_array(matrix, grid)
    dom = dominance_pairs(matrix)
    forbidden = [matrix.index_of(a) for a in _split_ids(args.forbid)]
    result = select_reference_set(cov, dom, args.coverage, forbidden)
    if isinstance(result, InfeasibleSelection):
        print(f"infeasible: {result.message}", file=sys.stderr)
        return 2
    if args.add:
        result = augment_selection(
            matrix, result, [matrix.index_of(a) for a in _split_ids(args.add)]
        )
    ids = [matrix.ids[i] for i in result.indices]
    print(f"reference set ({result.size}): {', '.join(ids)}")
    picked = cov[list(result.indices)].sum(axis=0)
    print("segment coverage by the selection (criterion x segment):")
    for j, crit in enumerate(matrix.criteria):
        row = " ".join(str(int(v)) for v in picked[j])
        print(f"  {crit.name}: {row}")
    _warn_overfit(segments, result.size)

    session = Session()
    session.set_matrix(matrix, source=args.matrix)
    session.set_segments(segments)
    session.set_reference(ids)
    session.doc["refset_options"] = {
        "coverage": args.coverage,
        "forbid": _split_ids(args.forbid),
        "add": _split_ids(args.add),
    }
    inputs = session.inputs_stamp("matrix", "segments", "refset_options")
    session.cache_put(
        "refset",
        inputs,
        {
            "selected": ids,
            "coverage_sum": [[int(v) for v in row] for row in picked],
        },
    )
    out = Path(args.session) if args.session else Path(args.matrix).with_suffix(
        ".session.json"
    )
    session.save(out)
    print(f"session written to {out}")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    session = Session.load(args.session)
    session.cache_drop_stale()
    matrix = session.matrix()
    if args.thresholds:
        session.set_thresholds(
            ThresholdTable.from_csv(args.thresholds), source=args.thresholds
        )
    table = session.thresholds()
    comparisons = session.comparison_set(matrix)
    report = build_report(comparisons, table)
    ranges = revision_ranges(comparisons, table)

    ref_ids = session.reference_ids()
    print(f"OR = {_fmt(report.or_value)}  [{report.or_verdict}]")
    print("OR by alternative:")
    for alt, v in zip(ref_ids, report.or_by_alt):
        print(f"  {alt}: {_fmt(v)}")
    print("violation matrix (rows/cols in reference order):")
    for row in report.violations:
        print("  " + " ".join(_fmt(v) for v in row))
    thr = "unknown" if report.threshold is None else _fmt(report.threshold)
    print(f"CR = {_fmt(report.cr_value)}  [{report.cr_verdict}, threshold {thr}]")
    if not ranges.threshold_known:
        print(
            "warning: no threshold for this (size, a_BW); revision ranges "
            "use a cardinal bound of 1",
            file=sys.stderr,
        )
    print("single-judgment revision ranges:")
    for entry in ranges.ranges:
        alt = matrix.ids[entry.index]
        if entry.interval is None:
            span = "none"
        else:
            span = f"[{_fmt(entry.interval[0])}, {_fmt(entry.interval[1])}]"
        print(f"  {entry.vector} {alt}: current {_fmt(entry.current)} -> {span}")

    inputs = session.inputs_stamp("comparisons", "reference", "thresholds")
    session.cache_put(
        "consistency",
        inputs,
        {
            "or": report.or_value,
            "or_by_alt": list(report.or_by_alt),
            "violations": [[float(v) for v in row] for row in report.violations],
            "cr": report.cr_value,
            "cr_by_alt": list(report.cr_by_alt),
            "threshold": report.threshold,
            "or_verdict": report.or_verdict,
            "cr_verdict": report.cr_verdict,
            "revision_ranges": [
                {
                    "vector": e.vector,
                    "id": matrix.ids[e.index],
                    "current": e.current,
                    "interval": list(e.interval) if e.interval else None,
                }
                for e in ranges.ranges
            ],
            "threshold_known": ranges.threshold_known,
        },
    )
    session.save(args.session)
    return 0


def _run_solve(session: Session) -> dict:
    matrix = session.matrix()
    segments = session.segments()
    grid = build_grid(matrix, segments)
    comparisons = session.comparison_set(matrix)
    _warn_overfit(segments, comparisons.size)
    if comparisons.is_real_valued:
        kind = "bwd"
        result = solve_bwd(matrix, grid, comparisons)
    else:
        kind = "ibwd"
        result = solve_ibwd(matrix, grid, comparisons.as_intervals())
    data = {
        "kind": kind,
        "xi_star": result.xi_star,
        "values": {k: float(v) for k, v in result.values.items()},
        "ranking": [list(group) for group in result.ranking],
        "model": {
            "breakpoints": [list(row) for row in grid.breakpoints],
            "values": [list(row) for row in result.representative.values],
        },
    }
    inputs = session.inputs_stamp("matrix", "segments", "reference", "comparisons")
    session.cache_put("solve", inputs, data)
    return data


def _get_solve(session: Session) -> dict:
    inputs = session.inputs_stamp("matrix", "segments", "reference", "comparisons")
    cached = session.cache_get("solve", inputs)
    if cached is not None:
        return cached
    return _run_solve(session)


def cmd_solve(args: argparse.Namespace) -> int:
    session = Session.load(args.session)
    session.cache_drop_stale()
    if args.dump_lp:
        matrix = session.matrix()
        grid = build_grid(matrix, session.segments())
        comparisons = session.comparison_set(matrix)
        if not comparisons.is_real_valued:
            comparisons = comparisons.as_intervals()
        Path(args.dump_lp).write_text(
            to_lp_text(build_program(matrix, grid, comparisons), "bwd fit")
        )
        print(f"program dumped to {args.dump_lp}")
    data = _run_solve(session)
    print(f"model: {data['kind']}")
    print(f"xi* = {_fmt(data['xi_star'])}")
    print("ranking (best first; '=' joins ties):")
    for pos, group in enumerate(data["ranking"], start=1):
        label = " = ".join(group)
        print(f"  {pos}. {label}  ({_fmt(data['values'][group[0]])})")
    session.save(args.session)
    return 0


def _run_robust(session: Session, skip_necessary: bool) -> dict:
    matrix = session.matrix()
    grid = build_grid(matrix, session.segments())
    comparisons = session.comparison_set(matrix)
    if not comparisons.is_real_valued:
        comparisons = comparisons.as_intervals()
    solve_data = _get_solve(session)
    xi_star = float(solve_data["xi_star"])
    rel = None
    if not skip_necessary:
        rel = necessary_relation(matrix, grid, comparisons, xi_star)
    ranges = extreme_ranks(
        matrix, grid, comparisons, xi_star,
        pair_bounds=rel.delta if rel is not None else None,
    )
    data: dict = {
        "ranges": [
            {
                "id": r.alt_id,
                "best_rank": r.best_rank,
                "worst_rank": r.worst_rank,
            }
            for r in ranges
        ],
        "U": imprecision_index(ranges) if matrix.m >= 2 else None,
    }
    if rel is not None:
        data["necessary"] = sorted([list(pair) for pair in rel.strict])
        data["delta"] = [
            [p, q, d] for (p, q), d in sorted(rel.delta.items())
        ]
        data["hasse"] = [list(e) for e in hasse(rel, matrix.ids)]
    inputs = session.inputs_stamp("matrix", "segments", "reference", "comparisons")
    session.cache_put("robust", inputs, data)
    return data


def cmd_ranks(args: argparse.Namespace) -> int:
    session = Session.load(args.session)
    session.cache_drop_stale()
    data = _run_robust(session, args.skip_necessary)
    print("rank ranges [best, worst]:")
    by_best = sorted(data["ranges"], key=lambda r: (r["best_rank"], r["worst_rank"]))
    for r in by_best:
        print(f"  {r['id']}: [{r['best_rank']}, {r['worst_rank']}]")
    if data["U"] is not None:
        print(f"imprecision U = {_fmt(data['U'])}")
    if args.csv:
        ranges = [
            RankRange(r["id"], r["best_rank"], r["worst_rank"], 0, 0)
            for r in data["ranges"]
        ]
        Path(args.csv).write_text(rank_ranges_csv(ranges))
        print(f"rank ranges written to {args.csv}")
    session.save(args.session)
    return 0


def cmd_hasse(args: argparse.Namespace) -> int:
    session = Session.load(args.session)
    session.cache_drop_stale()
    matrix = session.matrix()
    inputs = session.inputs_stamp("matrix", "segments", "reference", "comparisons")
    cached = session.cache_get("robust", inputs)
    if cached is None or "hasse" not in cached:
        cached = _run_robust(session, skip_necessary=False)
    edges = [tuple(e) for e in cached["hasse"]]
    Path(args.out).write_text(hasse_dot(edges, matrix.ids))
    print(f"hasse diagram written to {args.out}")
    session.save(args.session)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        data_dir=args.data_dir,
        ui_dir=args.ui_dir,
        solve_budget=args.budget,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bwd",
        description="Best-worst disaggregation of expert preferences",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("refset", help="select a reference set from a matrix CSV")
    p.add_argument("--matrix", required=True)
    p.add_argument("--segments", default="2")
    p.add_argument("--coverage", type=int, default=1)
    p.add_argument("--forbid", help="comma-separated ids to exclude")
    p.add_argument("--add", help="comma-separated ids to add after solving")
    p.add_argument("--session", help="session file to write")
    p.set_defaults(func=cmd_refset)

    p = sub.add_parser("check", help="consistency report and revision ranges")
    p.add_argument("--session", required=True)
    p.add_argument("--thresholds", help="threshold table CSV (size,a_bw,threshold)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="fit the value model (auto-detects intervals)")
    p.add_argument("--session", required=True)
    p.add_argument("--dump-lp", help="write the program in LP text format")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("ranks", help="extreme ranks and imprecision index")
    p.add_argument("--session", required=True)
    p.add_argument(
        "--skip-necessary",
        action="store_true",
        help="skip the quadratic necessary-relation sweep",
    )
    p.add_argument("--csv", help="write rank ranges as CSV")
    p.set_defaults(func=cmd_ranks)

    p = sub.add_parser("hasse", help="necessary-relation Hasse diagram (DOT)")
    p.add_argument("--session", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("serve", help="run the HTTP elicitation service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", required=True)
    p.add_argument("--ui-dir", help="built web UI to host at /")
    p.add_argument("--budget", type=float, default=30.0,
                   help="seconds before a solve goes asynchronous")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, WorkflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - last-resort boundary
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
