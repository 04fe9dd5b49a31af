import numpy as np
import pytest

from bwd.disagg import solve_bwd, solve_ibwd
from bwd.model import ValidationError, build_grid, pareto_dominates
from bwd.robust import (
    NecessaryRelation,
    RankRange,
    extreme_ranks,
    hasse,
    hasse_dot,
    imprecision_index,
    necessary_relation,
    rank_ranges_csv,
)
from helpers import consistent_instance, noisy_instance, widen
from test_model import simple_matrix


def realized_ranks(values, ids):
    """Competition rank: 1 + number of strictly better alternatives."""
    return {
        a: 1 + sum(1 for b in ids if values[b] > values[a] + 1e-12) for a in ids
    }


def run_analysis(matrix, grid, comp, interval=False):
    res = (
        solve_ibwd(matrix, grid, comp)
        if interval
        else solve_bwd(matrix, grid, comp)
    )
    rel = necessary_relation(matrix, grid, comp, res.xi_star)
    ranks = extreme_ranks(matrix, grid, comp, res.xi_star)
    return res, rel, ranks


class TestNecessaryRelation:
    def test_dominated_never_beats_dominator(self):
        rng = np.random.default_rng(200)
        for _ in range(6):
            matrix, grid, comp = noisy_instance(rng, 6, 2, 2, 4)
            res = solve_bwd(matrix, grid, comp)
            rel = necessary_relation(matrix, grid, comp, res.xi_star)
            for p in range(matrix.m):
                for q in range(matrix.m):
                    if p != q and pareto_dominates(matrix, q, p):
                        assert rel.delta[(p, q)] <= 1e-9

    def test_unique_optimum_total_order(self):
        rng = np.random.default_rng(201)
        found = 0
        for _ in range(12):
            matrix, grid, hidden, values, comp = consistent_instance(
                rng, m=5, n=2, s=1, refsize=4, min_gap=5e-3
            )
            res, rel, ranks = run_analysis(matrix, grid, comp)
            all_ranges_single = all(r.width == 0 for r in ranks)
            if not all_ranges_single:
                continue
            found += 1
            order = sorted(matrix.ids, key=lambda a: -res.values[a])
            idx = {a: i for i, a in enumerate(matrix.ids)}
            for pos, a in enumerate(order):
                for b in order[pos + 1 :]:
                    assert rel.holds(idx[a], idx[b])
        assert found >= 3

    def test_relation_properties(self):
        rng = np.random.default_rng(202)
        matrix, grid, comp = noisy_instance(rng, 6, 2, 2, 4)
        res = solve_bwd(matrix, grid, comp)
        rel = necessary_relation(matrix, grid, comp, res.xi_star)
        for q, p in rel.strict:
            assert q != p
            assert (p, q) not in rel.strict
            assert not (rel.delta[(p, q)] < 0 and rel.delta[(q, p)] < 0)


class TestExtremeRanks:
    def test_indistinguishable_pair_spans_both_ranks(self):
        matrix = simple_matrix([[0.5, 0.5], [0.5, 0.5]])
        grid = build_grid(matrix, 1)
        comp = None
        from bwd.model import ComparisonSet

        comp = ComparisonSet(
            (0, 1), 0, 1, {0: 1.0, 1: 1.0}, {0: 1.0, 1: 1.0}
        )
        res, rel, ranks = run_analysis(matrix, grid, comp)
        for r in ranks:
            assert (r.best_rank, r.worst_rank) == (1, 2)
        assert not rel.strict

    def test_case_invariants_on_random_instances(self):
        rng = np.random.default_rng(203)
        for _ in range(6):
            matrix, grid, comp = noisy_instance(rng, 5, 2, 2, 3)
            res, rel, ranks = run_analysis(matrix, grid, comp)
            by_id = {r.alt_id: r for r in ranks}
            # (a) ranges ordered, within [1, m]
            for r in ranks:
                assert 1 <= r.best_rank <= r.worst_rank <= matrix.m
                assert r.best_rank == matrix.m - r.outrank_count
                assert r.worst_rank == r.dominance_count + 1
            # (b) necessary preference implies rank dominance
            for q, p in rel.strict:
                assert by_id[matrix.ids[q]].best_rank <= by_id[matrix.ids[p]].best_rank
                assert (
                    by_id[matrix.ids[q]].worst_rank
                    <= by_id[matrix.ids[p]].worst_rank
                )
            # (c) the representative model's realized ranks are attainable
            realized = realized_ranks(res.values, matrix.ids)
            for a, rank in realized.items():
                assert by_id[a].best_rank <= rank <= by_id[a].worst_rank

    def test_widening_at_zero_deviation_never_shrinks_ranges(self):
        # When the real judgments fit exactly, every exactly-fitting model
        # also satisfies any enclosing intervals exactly, so the interval
        # optimal set contains the real one and conclusions can only weaken.
        rng = np.random.default_rng(204)
        for _ in range(4):
            matrix, grid, hidden, values, comp = consistent_instance(
                rng, m=5, n=2, s=2, refsize=4
            )
            res_r, rel_r, ranks_r = run_analysis(matrix, grid, comp)
            assert res_r.xi_star <= 1e-9
            wide = widen(rng, comp)
            res_i, rel_i, ranks_i = run_analysis(
                matrix, grid, wide, interval=True
            )
            for rr, ri in zip(ranks_r, ranks_i):
                assert ri.best_rank <= rr.best_rank
                assert ri.worst_rank >= rr.worst_rank
            assert rel_i.strict <= rel_r.strict

    def test_widening_at_a_shared_cap_never_shrinks_ranges(self):
        # At the same deviation cap, interval constraints are pointwise looser
        # than the reals they enclose, so the searched polytope only grows.
        rng = np.random.default_rng(205)
        for _ in range(4):
            matrix, grid, comp = noisy_instance(rng, 5, 2, 2, 3)
            res_r = solve_bwd(matrix, grid, comp)
            cap = res_r.xi_star
            rel_r = necessary_relation(matrix, grid, comp, cap)
            ranks_r = extreme_ranks(matrix, grid, comp, cap)
            wide = widen(rng, comp)
            rel_i = necessary_relation(matrix, grid, wide, cap)
            ranks_i = extreme_ranks(matrix, grid, wide, cap)
            for rr, ri in zip(ranks_r, ranks_i):
                assert ri.best_rank <= rr.best_rank
                assert ri.worst_rank >= rr.worst_rank
            assert rel_i.strict <= rel_r.strict


class TestImprecision:
    def test_singletons_zero(self):
        ranges = [RankRange("a", 1, 1, 1, 0), RankRange("b", 2, 2, 0, 1)]
        assert imprecision_index(ranges) == 0.0

    def test_two_way_tie_is_maximal(self):
        ranges = [RankRange("a", 1, 2, 1, 1), RankRange("b", 1, 2, 1, 1)]
        assert imprecision_index(ranges) == 1.0

    def test_needs_two_alternatives(self):
        with pytest.raises(ValidationError):
            imprecision_index([RankRange("a", 1, 1, 0, 0)])


class TestHasse:
    def relation(self, pairs, deltas=None):
        delta = deltas or {}
        for q, p in pairs:
            delta.setdefault((p, q), -1.0)
            delta.setdefault((q, p), 1.0)
        return NecessaryRelation(frozenset(pairs), delta)

    def test_total_order_chain(self):
        rel = self.relation({(0, 1), (0, 2), (1, 2)})
        edges = hasse(rel, ["a", "b", "c"])
        assert edges == [("a", "b"), ("b", "c")]

    def test_empty_relation(self):
        rel = self.relation(set())
        assert hasse(rel, ["a", "b"]) == []

    def test_diamond_reduction(self):
        rel = self.relation({(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)})
        edges = hasse(rel, ["a", "b", "c", "d"])
        assert ("a", "d") not in edges
        assert set(edges) == {("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")}

    def test_intransitive_relation_rejected(self):
        from bwd.optimizer import SolverError

        rel = self.relation({(0, 1), (1, 2)})
        with pytest.raises(SolverError):
            hasse(rel, ["a", "b", "c"])

    def test_dot_output(self):
        rel = self.relation({(0, 1)})
        dot = hasse_dot(hasse(rel, ["a", "b"]), ["a", "b"])
        assert dot.startswith("digraph")
        assert '"a" -> "b";' in dot
        assert dot.rstrip().endswith("}")

    def test_csv_output(self):
        out = rank_ranges_csv([RankRange("a", 1, 2, 1, 1)])
        assert out == "id,best_rank,worst_rank\na,1,2\n"
