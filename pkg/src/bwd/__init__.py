"""Best-worst disaggregation of expert preferences into piecewise-linear
additive value models, with consistency diagnostics and robustness analysis.

Typical flow: build a :class:`PerformanceMatrix` and a grid, pick a reference
set, collect best/worst judgments into a :class:`ComparisonSet`, check their
consistency, fit with :func:`solve_bwd` (or :func:`solve_ibwd` for interval
judgments), then interrogate the optimal set with :func:`necessary_relation`
and :func:`extreme_ranks`.
"""

from .model import (
    BreakpointGrid,
    ComparisonSet,
    Criterion,
    OutOfRangeError,
    PerformanceMatrix,
    PiecewiseValueModel,
    ValidationError,
    build_grid,
    evaluate_attribute,
    evaluate_global,
    pareto_dominates,
)
from .optimizer import (
    LinearProgram,
    Solution,
    SolverError,
    solve_lp,
    solve_milp,
    to_lp_text,
)
from .refset import (
    InfeasibleSelection,
    Selection,
    augment_selection,
    coverage_array,
    dominance_pairs,
    select_reference_set,
)
from .consistency import (
    ConsistencyReport,
    RevisionRange,
    RevisionRanges,
    ThresholdTable,
    build_report,
    cardinal_ratio,
    check_thresholds,
    ordinal_ratio,
    revision_ranges,
)
from .disagg import (
    DisaggregationResult,
    representative_model,
    solve_bwd,
    solve_ibwd,
)
from .robust import (
    NecessaryRelation,
    RankRange,
    extreme_ranks,
    hasse,
    hasse_dot,
    imprecision_index,
    necessary_relation,
    rank_ranges_csv,
)
from .session import Session, WorkflowError, ingest_matrix
from .schemas import validate_payload

__version__ = "0.1.0"

__all__ = [
    "BreakpointGrid",
    "ComparisonSet",
    "ConsistencyReport",
    "Criterion",
    "DisaggregationResult",
    "InfeasibleSelection",
    "LinearProgram",
    "NecessaryRelation",
    "OutOfRangeError",
    "PerformanceMatrix",
    "PiecewiseValueModel",
    "RankRange",
    "RevisionRange",
    "RevisionRanges",
    "Selection",
    "Session",
    "Solution",
    "SolverError",
    "ThresholdTable",
    "ValidationError",
    "WorkflowError",
    "augment_selection",
    "build_grid",
    "build_report",
    "cardinal_ratio",
    "check_thresholds",
    "coverage_array",
    "dominance_pairs",
    "evaluate_attribute",
    "evaluate_global",
    "extreme_ranks",
    "hasse",
    "hasse_dot",
    "imprecision_index",
    "ingest_matrix",
    "necessary_relation",
    "ordinal_ratio",
    "pareto_dominates",
    "rank_ranges_csv",
    "representative_model",
    "revision_ranges",
    "select_reference_set",
    "solve_bwd",
    "solve_ibwd",
    "solve_lp",
    "solve_milp",
    "to_lp_text",
    "validate_payload",
]
