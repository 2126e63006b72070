import itertools

import numpy as np
import pytest

from cointlab.breaks import BreakModel, global_breaks, sequential_breaks, supf_test
from cointlab.errors import ParameterError


def exhaustive_partition(y, X, h, k):
    """Brute-force oracle: minimize SSR over all admissible k-break partitions."""
    T = y.shape[0]

    def seg_ssr(lo, hi):
        Xs, ys = X[lo : hi + 1], y[lo : hi + 1]
        beta, *_ = np.linalg.lstsq(Xs, ys, rcond=None)
        r = ys - Xs @ beta
        return float(r @ r)

    if k == 0:
        return (), seg_ssr(0, T - 1)
    best = (None, np.inf)
    for breaks in itertools.combinations(range(1, T), k):
        bounds = (0,) + breaks + (T,)
        if any(bounds[i + 1] - bounds[i] < h for i in range(len(bounds) - 1)):
            continue
        total = sum(seg_ssr(bounds[i], bounds[i + 1] - 1) for i in range(len(bounds) - 1))
        if total < best[1] - 1e-12:
            best = (breaks, total)
    return best


def mean_shift_series(seed, t, shifts):
    rng = np.random.default_rng(seed)
    y = rng.normal(0, 1.0, t)
    for at, size in shifts:
        y[at:] += size
    return y


class TestGlobalBreaks:
    def test_zero_breaks_is_full_sample_ssr(self):
        y = mean_shift_series(0, 24, [])
        X = np.ones((24, 1))
        m = BreakModel(y, X, trimming=0.15, max_breaks=3)
        _, ssr = global_breaks(m, 0)
        beta = y.mean()
        assert ssr == pytest.approx(float(np.sum((y - beta) ** 2)), rel=1e-12)

    def test_single_break_matches_brute_force(self):
        y = mean_shift_series(1, 20, [(10, 4.0)])
        X = np.ones((20, 1))
        m = BreakModel(y, X, trimming=0.15, max_breaks=2)
        dates, ssr = global_breaks(m, 1)
        oracle_dates, oracle_ssr = exhaustive_partition(y, X, m.min_segment, 1)
        assert dates == oracle_dates
        assert ssr == pytest.approx(oracle_ssr, rel=1e-10)
        assert abs(dates[0] - 10) <= 1

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_dynamic_programming_equals_enumeration(self, k):
        rng = np.random.default_rng(100 + k)
        t = 30
        y = mean_shift_series(2 + k, t, [(9, 3.0), (18, -4.0), (24, 5.0)][:k])
        X = np.column_stack([np.ones(t), rng.normal(size=t)])
        m = BreakModel(y, X, trimming=0.12, max_breaks=4)
        dates, ssr = global_breaks(m, k)
        oracle_dates, oracle_ssr = exhaustive_partition(y, X, m.min_segment, k)
        assert dates == oracle_dates
        assert ssr == pytest.approx(oracle_ssr, rel=1e-10)

    def test_ssr_non_increasing_in_k(self):
        y = mean_shift_series(9, 40, [(12, 2.0), (28, -3.0)])
        m = BreakModel(y, np.ones((40, 1)), trimming=0.1, max_breaks=5)
        ssrs = [global_breaks(m, k)[1] for k in range(4)]
        assert all(a >= b - 1e-9 for a, b in zip(ssrs, ssrs[1:]))

    def test_segments_respect_minimum_length(self):
        y = mean_shift_series(10, 35, [(11, 5.0), (23, -5.0)])
        m = BreakModel(y, np.ones((35, 1)), trimming=0.15, max_breaks=3)
        dates, _ = global_breaks(m, 2)
        bounds = [0, *dates, 35]
        assert all(bounds[i + 1] - bounds[i] >= m.min_segment for i in range(len(bounds) - 1))

    def test_infeasible_break_count_rejected(self):
        # h = 4 on T = 20 admits at most 20 // 4 - 1 = 4 breaks
        m = BreakModel(np.zeros(20) + np.arange(20.0), np.ones((20, 1)), trimming=0.2)
        with pytest.raises(ParameterError):
            global_breaks(m, 5)

    def test_years_reported_when_anchored(self):
        y = mean_shift_series(11, 30, [(15, 6.0)])
        m = BreakModel(y, np.ones((30, 1)), trimming=0.15, max_breaks=2, start_year=1980)
        dates, _ = global_breaks(m, 1)
        assert 1990 <= dates[0] <= 2000


class TestSupF:
    def test_large_shift_rejects(self):
        y = mean_shift_series(3, 60, [(30, 4.0)])
        m = BreakModel(y, np.ones((60, 1)), trimming=0.15, max_breaks=3)
        res = supf_test(m, 0)
        assert res.statistic > 16.19
        assert res.reject

    def test_stable_series_does_not_reject(self):
        y = mean_shift_series(4, 60, [])
        m = BreakModel(y, np.ones((60, 1)), trimming=0.15, max_breaks=3)
        res = supf_test(m, 0)
        assert not res.reject

    def test_infeasible_l_rejected(self):
        y = mean_shift_series(5, 20, [])
        m = BreakModel(y, np.ones((20, 1)), trimming=0.3, max_breaks=2)
        with pytest.raises(ParameterError):
            supf_test(m, 2)

    def test_size_under_stable_model(self):
        from cointlab.montecarlo import supf_size

        res = supf_size(seed=17, n_reps=1000, t=120)
        assert abs(res.rejection_rate - 0.05) <= 0.02


class TestSequential:
    def test_constant_series_finds_nothing(self):
        m = BreakModel(np.full(30, 2.5), np.ones((30, 1)), trimming=0.15, max_breaks=3)
        res = sequential_breaks(m)
        assert res.num_breaks == 0
        assert res.break_years == ()

    def test_two_engineered_shifts_found(self):
        y = mean_shift_series(6, 60, [(20, 5.0), (40, -5.0)])
        m = BreakModel(y, np.ones((60, 1)), trimming=0.15, max_breaks=4)
        res = sequential_breaks(m)
        assert res.num_breaks == 2
        assert abs(res.break_years[0] - 20) <= 1
        assert abs(res.break_years[1] - 40) <= 1

    def test_statistics_and_critical_values_aligned(self):
        y = mean_shift_series(7, 50, [(25, 4.0)])
        m = BreakModel(y, np.ones((50, 1)), trimming=0.15, max_breaks=4)
        res = sequential_breaks(m)
        assert len(res.f_statistics) == len(res.critical_values)
        assert res.num_breaks <= m.max_breaks

    def test_minimum_segment_invariant_on_output(self):
        y = mean_shift_series(8, 45, [(15, 6.0), (30, -6.0)])
        m = BreakModel(y, np.ones((45, 1)), trimming=0.15, max_breaks=4, start_year=0)
        res = sequential_breaks(m)
        bounds = [0, *res.break_years, 45]
        assert all(bounds[i + 1] - bounds[i] >= m.min_segment for i in range(len(bounds) - 1))
