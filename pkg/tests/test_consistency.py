import numpy as np
import pytest

from bwd.consistency import (
    FAIL,
    PASS,
    UNKNOWN,
    ThresholdTable,
    build_report,
    cardinal_ratio,
    check_thresholds,
    ordinal_ratio,
    revision_ranges,
)
from bwd.model import ComparisonSet, ValidationError
from helpers import table1_comparisons, table4_comparisons, table5_comparisons


def multiplicative_set(rng, size=5):
    """Fully consistent judgments: bo[i] * ow[i] == a_BW for every i."""
    a_bw = float(rng.uniform(2, 9))
    ref = tuple(range(size))
    bo = {0: 1.0, size - 1: a_bw}
    ow = {0: a_bw, size - 1: 1.0}
    for i in range(1, size - 1):
        v = float(rng.uniform(1, a_bw))
        bo[i] = v
        ow[i] = a_bw / v
    return ComparisonSet(ref, 0, size - 1, bo, ow)


class TestOrdinal:
    def test_table1(self):
        or_value, or_i, viol = ordinal_ratio(table1_comparisons())
        assert or_value == pytest.approx(0.2, abs=1e-12)
        assert or_i == pytest.approx((0.0, 0.0, 0.2, 0.2, 0.0), abs=1e-12)
        expected = np.zeros((5, 5))
        expected[2, 3] = expected[3, 2] = 1.0
        assert (viol == expected).all()

    def test_table4(self):
        or_value, _, viol = ordinal_ratio(table4_comparisons())
        assert or_value == 0.0
        assert (viol == 0).all()

    def test_multiplicative_sets_clean(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            c = multiplicative_set(rng)
            or_value, _, _ = ordinal_ratio(c)
            assert or_value == 0.0

    def test_pairwise_symmetry(self):
        rng = np.random.default_rng(8)
        for _ in range(30):
            size = int(rng.integers(2, 7))
            ref = tuple(range(size))
            bo = {i: float(rng.integers(1, 10)) for i in ref}
            ow = {i: float(rng.integers(1, 10)) for i in ref}
            bo[0], ow[size - 1] = 1.0, 1.0
            c = ComparisonSet(ref, 0, size - 1, bo, ow)
            or_value, or_i, viol = ordinal_ratio(c)
            assert 0.0 <= or_value <= 1.0
            assert (viol == viol.T).all()
            assert or_value == max(or_i)

    def test_rejects_intervals(self):
        with pytest.raises(ValidationError):
            ordinal_ratio(table5_comparisons())

    def test_half_violation_case(self):
        # Same bo for two alternatives but different ow: weak reversal 0.5.
        c = ComparisonSet(
            (0, 1, 2),
            0,
            2,
            bo={0: 1.0, 1: 4.0, 2: 4.0},
            ow={0: 4.0, 1: 3.0, 2: 1.0},
        )
        _, _, viol = ordinal_ratio(c)
        assert viol[1, 2] == 0.5 and viol[2, 1] == 0.5


class TestCardinal:
    def test_table1(self):
        cr, devs = cardinal_ratio(table1_comparisons())
        assert cr == pytest.approx(12 / 56, abs=1e-12)
        assert devs[3] == pytest.approx(12 / 56, abs=1e-12)  # Greece
        assert devs[1] == pytest.approx(7 / 56, abs=1e-12)  # Hungary

    def test_table4(self):
        cr, devs = cardinal_ratio(table4_comparisons())
        assert cr == pytest.approx(0.125, abs=1e-12)

    def test_consistent_set_zero(self):
        rng = np.random.default_rng(14)
        for _ in range(20):
            cr, _ = cardinal_ratio(multiplicative_set(rng))
            assert cr == pytest.approx(0.0, abs=1e-12)

    def test_degenerate_abw(self):
        c = ComparisonSet(
            (0, 1, 2),
            0,
            2,
            bo={0: 1.0, 1: 1.0, 2: 1.0},
            ow={0: 1.0, 1: 1.0, 2: 1.0},
        )
        cr, devs = cardinal_ratio(c)
        assert cr == 0.0 and all(d == 0.0 for d in devs)


class TestThresholds:
    def test_published_cell(self):
        table = ThresholdTable.default()
        or_v, cr_v, thr = check_thresholds(0.2, 12 / 56, 5, 8.0, table)
        assert or_v == FAIL and cr_v == PASS and thr == 0.284

    def test_or_pass_requires_exact_zero(self):
        table = ThresholdTable.default()
        or_v, _, _ = check_thresholds(0.0, 0.1, 5, 8.0, table)
        assert or_v == PASS

    def test_unknown_cell(self):
        table = ThresholdTable.default()
        _, cr_v, thr = check_thresholds(0.0, 0.1, 4, 7.0, table)
        assert cr_v == UNKNOWN and thr is None

    def test_csv_round_trip(self, tmp_path):
        f = tmp_path / "thr.csv"
        f.write_text("size,a_bw,threshold\n5,8,0.284\n4,7,0.35\n")
        table = ThresholdTable.from_csv(f)
        assert table.lookup(4, 7.0) == 0.35

    def test_csv_requires_columns(self, tmp_path):
        f = tmp_path / "thr.csv"
        f.write_text("a,b\n1,2\n")
        with pytest.raises(ValidationError):
            ThresholdTable.from_csv(f)

    def test_threshold_domain(self):
        with pytest.raises(ValidationError):
            ThresholdTable({(5, 8): 1.5})


class TestReport:
    def test_invariants(self):
        rep = build_report(table1_comparisons())
        assert rep.or_value == max(rep.or_by_alt)
        assert rep.cr_value == max(rep.cr_by_alt)
        assert rep.or_verdict == FAIL and rep.cr_verdict == PASS


class TestRevisionRanges:
    def test_consistent_set_contains_current(self):
        rng = np.random.default_rng(21)
        for _ in range(5):
            c = multiplicative_set(rng, size=4)
            rr = revision_ranges(c, ThresholdTable({(4, round(c.bo[c.worst])): 0.3}))
            for entry in rr.ranges:
                assert entry.interval is not None
                lo, hi = entry.interval
                # Sweep resolution: current must sit inside (or within a step).
                assert lo - 0.011 <= entry.current <= hi + 0.011

    def test_self_comparisons_pinned(self):
        rr = revision_ranges(table1_comparisons())
        assert rr.get("bo", 0).interval == (1.0, 1.0)
        assert rr.get("ow", 4).interval == (1.0, 1.0)

    def test_table1_inconsistent_positions_move(self):
        rr = revision_ranges(table1_comparisons())
        # The reversal is between positions 2 and 3: repairing via bo[2]
        # requires crossing bo[3] = 5; via ow[2] crossing ow[3] = 4.
        lo, hi = rr.get("bo", 2).interval
        assert lo > 5.0 and hi <= 7.97
        lo, hi = rr.get("ow", 2).interval
        assert lo > 4.0 and hi <= 5.0

    def test_changes_inside_ranges_keep_cr_within_threshold(self):
        rng = np.random.default_rng(31)
        table = ThresholdTable.default()
        c = table1_comparisons()
        rr = revision_ranges(c, table)
        limit = 0.284
        for entry in rr.ranges:
            if entry.interval is None:
                continue
            lo, hi = entry.interval
            for v in np.linspace(lo, hi, 7):
                bo = dict(c.bo)
                ow = dict(c.ow)
                (bo if entry.vector == "bo" else ow)[entry.index] = float(v)
                mod = ComparisonSet(c.reference, c.best, c.worst, bo, ow)
                cr, _ = cardinal_ratio(mod)
                assert cr <= limit + 1e-9

    def test_unknown_threshold_flagged(self):
        c = multiplicative_set(np.random.default_rng(2), size=4)
        rr = revision_ranges(c, ThresholdTable.default())
        assert not rr.threshold_known
