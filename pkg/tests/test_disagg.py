import numpy as np
import pytest

from bwd.disagg import representative_model, solve_bwd, solve_ibwd
from bwd.model import (
    ComparisonSet,
    ValidationError,
    build_grid,
    evaluate_global,
    pareto_dominates,
)
from helpers import consistent_instance, noisy_instance, random_matrix, widen
from test_model import simple_matrix


class TestGenerateAndRecover:
    def test_exact_judgments_fit_exactly(self):
        rng = np.random.default_rng(100)
        for _ in range(25):
            matrix, grid, hidden, values, comp = consistent_instance(
                rng, m=8, n=3, s=2, refsize=4
            )
            res = solve_bwd(matrix, grid, comp)
            assert res.xi_star <= 1e-7
            hidden_order = sorted(comp.reference, key=lambda i: -values[i])
            recovered_order = sorted(
                comp.reference, key=lambda i: -res.values[matrix.ids[i]]
            )
            assert hidden_order == recovered_order

    def test_dominance_violating_judgments_cannot_fit(self):
        # The expert prefers a Pareto-dominated alternative: monotonicity
        # makes an exact fit impossible, so the deviation is positive.
        matrix = simple_matrix([[0.9, 0.9], [0.2, 0.2], [0.5, 0.1], [0.1, 0.5]])
        grid = build_grid(matrix, 2)
        comp = ComparisonSet(
            (0, 1),
            best=1,  # claims the dominated row is best
            worst=0,
            bo={1: 1.0, 0: 4.0},
            ow={1: 4.0, 0: 1.0},
        )
        res = solve_bwd(matrix, grid, comp)
        assert res.xi_star > 1e-6

    def test_xi_zero_iff_exact_fit_feasible(self):
        rng = np.random.default_rng(101)
        from bwd.disagg import add_judgment_constraints, add_model_variables
        from bwd.optimizer import LinearProgram, solve_lp

        for _ in range(10):
            matrix, grid, comp = noisy_instance(rng, 6, 2, 2, 4)
            res = solve_bwd(matrix, grid, comp)
            feas = LinearProgram()
            add_model_variables(feas, grid)
            add_judgment_constraints(feas, matrix, grid, comp, 0.0)
            feas.set_objective("min", {})
            exact_fit = solve_lp(feas).status == "optimal"
            assert exact_fit == (res.xi_star <= 1e-9)


class TestResultContract:
    def test_ranking_covers_all_alternatives(self):
        rng = np.random.default_rng(102)
        matrix, grid, comp = noisy_instance(rng, 7, 3, 2, 4)
        res = solve_bwd(matrix, grid, comp)
        ranked = [a for group in res.ranking for a in group]
        assert sorted(ranked) == sorted(matrix.ids)
        flat_vals = [res.values[a] for a in ranked]
        assert all(a >= b - 1e-9 for a, b in zip(flat_vals, flat_vals[1:]))

    def test_values_respect_dominance(self):
        rng = np.random.default_rng(103)
        for _ in range(10):
            matrix, grid, comp = noisy_instance(rng, 6, 2, 2, 3)
            res = solve_bwd(matrix, grid, comp)
            for i in range(matrix.m):
                for k in range(matrix.m):
                    if i != k and pareto_dominates(matrix, i, k):
                        assert (
                            res.values[matrix.ids[i]]
                            >= res.values[matrix.ids[k]] - 1e-9
                        )

    def test_real_judgments_rejected_by_ibwd_and_vice_versa(self):
        rng = np.random.default_rng(104)
        matrix, grid, comp = noisy_instance(rng, 5, 2, 2, 3)
        with pytest.raises(ValidationError):
            solve_ibwd(matrix, grid, comp)
        with pytest.raises(ValidationError):
            solve_bwd(matrix, grid, comp.as_intervals())

    def test_grid_must_match_matrix(self):
        rng = np.random.default_rng(105)
        matrix, _, comp = noisy_instance(rng, 5, 2, 2, 3)
        other = random_matrix(np.random.default_rng(1), 5, 3)
        grid = build_grid(other, 2)
        with pytest.raises(ValidationError):
            solve_bwd(matrix, grid, comp)


class TestIntervals:
    def test_degenerate_intervals_reproduce_bwd(self):
        rng = np.random.default_rng(106)
        for _ in range(10):
            matrix, grid, comp = noisy_instance(rng, 6, 2, 2, 4)
            real = solve_bwd(matrix, grid, comp)
            degenerate = solve_ibwd(matrix, grid, comp.as_intervals())
            assert degenerate.xi_star == pytest.approx(real.xi_star, abs=1e-9)

    def test_enclosing_intervals_never_fit_worse(self):
        rng = np.random.default_rng(107)
        for _ in range(20):
            matrix, grid, comp = noisy_instance(rng, 6, 2, 2, 4)
            real = solve_bwd(matrix, grid, comp)
            wide = solve_ibwd(matrix, grid, widen(rng, comp))
            assert wide.xi_star <= real.xi_star + 1e-9

    def test_scale_shift_keeps_consistent_fit(self):
        # Multiplicatively consistent judgments stay fittable when the whole
        # reference set moves to a different part of the scale.
        rng = np.random.default_rng(108)
        matrix, grid, hidden, values, comp = consistent_instance(
            rng, m=7, n=2, s=2, refsize=4
        )
        res = solve_bwd(matrix, grid, comp)
        assert res.xi_star <= 1e-7

    def test_judgments_are_scale_invariant(self):
        # The oracle's judgments are value ratios, so rescaling the hidden
        # values changes nothing: same comparison set, still an exact fit.
        rng = np.random.default_rng(112)
        matrix, grid, hidden, values, comp = consistent_instance(
            rng, m=7, n=2, s=2, refsize=4
        )
        for c in (0.25, 3.0):
            scaled = [c * v for v in values]
            bo = {i: scaled[comp.best] / scaled[i] for i in comp.reference}
            ow = {i: scaled[i] / scaled[comp.worst] for i in comp.reference}
            for i in comp.reference:
                assert bo[i] == pytest.approx(comp.bo[i], abs=1e-12)
                assert ow[i] == pytest.approx(comp.ow[i], abs=1e-12)
        assert solve_bwd(matrix, grid, comp).xi_star <= 1e-7


class TestRepresentativeModel:
    def test_recomputed_deviation_within_optimum(self):
        rng = np.random.default_rng(109)
        for _ in range(10):
            matrix, grid, comp = noisy_instance(rng, 6, 3, 2, 4)
            res = solve_bwd(matrix, grid, comp)
            model = res.representative
            worst = 0.0
            internal = matrix.internal_levels
            vb = evaluate_global(model, internal[comp.best])
            vw = evaluate_global(model, internal[comp.worst])
            for i in comp.reference:
                vi = evaluate_global(model, internal[i])
                if i != comp.best:
                    worst = max(worst, abs(vb - comp.bo[i] * vi))
                if i != comp.worst:
                    worst = max(worst, abs(vi - comp.ow[i] * vw))
            assert worst <= res.xi_star + 1e-6

    def test_single_criterion_is_the_maximizer(self):
        rng = np.random.default_rng(110)
        matrix, grid, comp = noisy_instance(rng, 5, 1, 2, 3)
        res = solve_bwd(matrix, grid, comp)
        model = representative_model(matrix, grid, comp, res.xi_star)
        # One criterion: normalization pins the weight to exactly 1.
        assert model.weights[0] == pytest.approx(1.0, abs=1e-9)

    def test_refining_grid_never_hurts(self):
        rng = np.random.default_rng(111)
        for _ in range(8):
            matrix, _, comp = noisy_instance(rng, 6, 2, 1, 4)
            coarse = solve_bwd(matrix, build_grid(matrix, 1), comp)
            fine = solve_bwd(matrix, build_grid(matrix, 2), comp)
            finer = solve_bwd(matrix, build_grid(matrix, 4), comp)
            assert fine.xi_star <= coarse.xi_star + 1e-9
            assert finer.xi_star <= fine.xi_star + 1e-9
