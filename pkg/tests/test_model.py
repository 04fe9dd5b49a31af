import numpy as np
import pytest

from bwd.model import (
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
from helpers import random_matrix, random_model


def simple_matrix(rows, ranges=None, directions=None):
    n = len(rows[0])
    return PerformanceMatrix.from_levels(
        [f"a{i}" for i in range(len(rows))],
        rows,
        [f"c{j}" for j in range(n)],
        directions=directions,
        ranges=ranges or [(0.0, 1.0)] * n,
    )


class TestGrid:
    def test_uniform_split(self):
        mat = simple_matrix([[0.0], [1.0]])
        grid = build_grid(mat, 2)
        assert grid.breakpoints[0] == (0.0, 0.5, 1.0)

    def test_single_segment(self):
        mat = simple_matrix([[2.0], [4.0]], ranges=[(2.0, 4.0)])
        grid = build_grid(mat, 1)
        assert grid.breakpoints[0] == (2.0, 4.0)

    def test_per_criterion_counts(self):
        mat = simple_matrix([[0.1, 0.2], [0.9, 0.8]])
        grid = build_grid(mat, [1, 3])
        assert grid.segment_counts == (1, 3)

    def test_degenerate_range_rejected(self):
        with pytest.raises(ValidationError, match="c0"):
            Criterion("c0", 1.0, 1.0)

    def test_zero_segments_rejected(self):
        mat = simple_matrix([[0.0], [1.0]])
        with pytest.raises(ValidationError):
            build_grid(mat, 0)

    def test_nonuniform_spacing_rejected(self):
        with pytest.raises(ValidationError, match="spacing"):
            BreakpointGrid(((0.0, 0.1, 1.0),))

    def test_segment_boundary_rule(self):
        grid = BreakpointGrid(((0.0, 0.5, 1.0),))
        assert grid.segment_index(0, 0.49) == 0
        assert grid.segment_index(0, 0.5) == 1  # left-closed on the right side
        assert grid.segment_index(0, 1.0) == 1  # last segment closed


class TestEvaluation:
    def model(self, values=(0.0, 0.3, 1.0)):
        grid = BreakpointGrid(((0.0, 0.5, 1.0),))
        return PiecewiseValueModel(grid, (tuple(values),))

    def test_interpolation(self):
        m = self.model()
        assert evaluate_attribute(m, 0, 0.25) == pytest.approx(0.15, abs=1e-12)
        assert evaluate_attribute(m, 0, 0.75) == pytest.approx(0.65, abs=1e-12)

    def test_anchors(self):
        m = self.model()
        assert evaluate_attribute(m, 0, 0.0) == 0.0
        assert evaluate_attribute(m, 0, 1.0) == 1.0

    def test_out_of_range(self):
        m = self.model()
        with pytest.raises(OutOfRangeError):
            evaluate_attribute(m, 0, 1.5)

    def test_global_additivity(self):
        grid = BreakpointGrid(((0.0, 0.5, 1.0), (0.0, 0.5, 1.0)))
        m = PiecewiseValueModel(grid, ((0.0, 0.15, 0.5), (0.0, 0.15, 0.5)))
        lo = evaluate_global(m, [0.0, 0.0])
        hi = evaluate_global(m, [1.0, 1.0])
        assert abs(lo) < 1e-9 and abs(hi - 1.0) < 1e-9

    def test_monotone_in_level(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            mat = random_matrix(rng, 3, 3)
            grid = build_grid(mat, int(rng.integers(1, 4)))
            model = random_model(rng, grid)
            for j in range(3):
                xs = np.sort(rng.uniform(0, 1, 20))
                vals = [evaluate_attribute(model, j, x) for x in xs]
                assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_model_invariants_enforced(self):
        grid = BreakpointGrid(((0.0, 0.5, 1.0),))
        with pytest.raises(ValidationError):
            PiecewiseValueModel(grid, ((0.1, 0.5, 1.0),))  # anchor not 0
        with pytest.raises(ValidationError):
            PiecewiseValueModel(grid, ((0.0, 0.8, 0.5),))  # decreasing
        with pytest.raises(ValidationError):
            PiecewiseValueModel(grid, ((0.0, 0.2, 0.5),))  # weights don't sum to 1


class TestPareto:
    def test_examples(self):
        mat = simple_matrix([[0.8, 0.8], [0.2, 0.2], [0.9, 0.1], [0.1, 0.9]])
        assert pareto_dominates(mat, 0, 1)
        assert not pareto_dominates(mat, 2, 3)
        assert not pareto_dominates(mat, 3, 2)

    def test_identical_rows(self):
        mat = simple_matrix([[0.5, 0.5], [0.5, 0.5]])
        assert not pareto_dominates(mat, 0, 1)
        assert not pareto_dominates(mat, 1, 0)

    def test_cost_direction_reorients(self):
        # Lower is better on a cost criterion.
        mat = simple_matrix(
            [[0.2], [0.8]], ranges=[(0.0, 1.0)], directions=["cost"]
        )
        assert pareto_dominates(mat, 0, 1)
        assert mat.internal_levels[0, 0] == pytest.approx(0.8)

    def test_relation_properties(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            m = int(rng.integers(2, 7))
            mat = random_matrix(rng, m, int(rng.integers(1, 4)))
            dom = {
                (i, k)
                for i in range(m)
                for k in range(m)
                if i != k and pareto_dominates(mat, i, k)
            }
            for i, k in dom:
                assert (k, i) not in dom  # antisymmetric
            for i, k in dom:
                for k2, l in dom:
                    if k == k2:
                        assert (i, l) in dom  # transitive

    def test_dominance_implies_value_order(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            mat = random_matrix(rng, 5, 3)
            grid = build_grid(mat, 2)
            model = random_model(rng, grid)
            vals = [
                evaluate_global(model, mat.internal_levels[i]) for i in range(5)
            ]
            for i in range(5):
                for k in range(5):
                    if i != k and pareto_dominates(mat, i, k):
                        assert vals[i] >= vals[k] - 1e-12


class TestMatrixValidation:
    def test_level_outside_range(self):
        with pytest.raises(ValidationError, match="outside range"):
            simple_matrix([[0.5], [1.5]])

    def test_duplicate_ids(self):
        with pytest.raises(ValidationError, match="duplicate"):
            PerformanceMatrix(
                ("a", "a"), np.array([[0.1], [0.2]]), (Criterion("c", 0, 1),)
            )

    def test_min_size(self):
        with pytest.raises(ValidationError):
            PerformanceMatrix(
                ("a",), np.array([[0.1]]), (Criterion("c", 0, 1),)
            )

    def test_observed_ranges_default(self):
        mat = PerformanceMatrix.from_levels(
            ["a", "b"], [[1.0, 5.0], [3.0, 2.0]], ["x", "y"]
        )
        assert mat.criteria[0].lower == 1.0 and mat.criteria[0].upper == 3.0
        assert mat.criteria[1].lower == 2.0 and mat.criteria[1].upper == 5.0


class TestComparisonSet:
    def test_scale_enforced(self):
        with pytest.raises(ValidationError, match="scale"):
            ComparisonSet((0, 1), 0, 1, {0: 1.0, 1: 10.0}, {0: 2.0, 1: 1.0})

    def test_self_comparisons_pinned(self):
        with pytest.raises(ValidationError, match="self-comparison"):
            ComparisonSet((0, 1), 0, 1, {0: 2.0, 1: 5.0}, {0: 5.0, 1: 1.0})

    def test_interval_bounds(self):
        with pytest.raises(ValidationError, match="inverted"):
            ComparisonSet(
                (0, 1), 0, 1, {0: 1.0, 1: (5.0, 3.0)}, {0: 5.0, 1: 1.0}
            )

    def test_degenerate_interval_allowed(self):
        c = ComparisonSet(
            (0, 1), 0, 1, {0: (1.0, 1.0), 1: (3.0, 3.0)}, {0: (3.0, 3.0), 1: (1.0, 1.0)}
        )
        assert not c.is_real_valued

    def test_as_intervals_round_trip(self):
        c = ComparisonSet((0, 1), 0, 1, {0: 1.0, 1: 4.0}, {0: 4.0, 1: 1.0})
        w = c.as_intervals()
        assert w.bo[1] == (4.0, 4.0)
