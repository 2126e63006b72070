import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cointlab.errors import DegenerateInputError, InsufficientDataError, ParameterError
from cointlab.regression import ols_fit
from cointlab.series import Series, diff
from cointlab.unitroot import (
    _perron_design,
    adf_test,
    integration_order,
    kpss_test,
    perron_test,
)


def random_walk(seed, t=120, drift=0.0):
    rng = np.random.default_rng(seed)
    return Series("rw", 1900, np.cumsum(drift + rng.standard_normal(t)))


def white_noise(seed, t=120):
    rng = np.random.default_rng(seed)
    return Series("wn", 1900, rng.standard_normal(t))


class TestAdf:
    def test_random_walk_fails_to_reject(self):
        res = adf_test(random_walk(0), "intercept")
        assert not res.rejected

    def test_white_noise_rejects(self):
        res = adf_test(white_noise(0), "intercept")
        assert res.rejected
        assert res.statistic < -2.94

    def test_decision_uses_critical_value_direction(self):
        res = adf_test(white_noise(1), "intercept")
        assert (res.statistic < res.critical_value_5pct) == res.rejected

    def test_short_series_rejected(self):
        with pytest.raises(InsufficientDataError):
            adf_test(white_noise(0, t=15), max_lags=10)

    @given(
        st.integers(0, 500),
        st.floats(0.2, 50.0),
        st.floats(-100.0, 100.0),
        st.sampled_from(["intercept", "intercept_trend"]),
    )
    @settings(max_examples=20, deadline=None)
    def test_affine_invariance(self, seed, a, b, det):
        s = random_walk(seed, t=80)
        res1 = adf_test(s, det)
        res2 = adf_test(Series("t", 1900, a * s.values + b), det)
        assert res1.statistic == pytest.approx(res2.statistic, abs=1e-8)
        assert res1.lags_used == res2.lags_used


class TestKpss:
    def test_random_walk_rejects_stationarity(self):
        res = kpss_test(random_walk(2), "intercept")
        assert res.rejected
        assert res.statistic > 0.46

    def test_white_noise_fails_to_reject(self):
        res = kpss_test(white_noise(2), "intercept")
        assert not res.rejected

    def test_constant_series_degenerate(self):
        with pytest.raises(DegenerateInputError):
            kpss_test(Series("c", 1900, np.full(40, 3.0)), "intercept")

    def test_pure_linear_trend_under_trend_spec(self):
        t = 500
        s = Series("line", 1500, 2.0 + 0.3 * np.arange(t))
        res = kpss_test(s, "intercept_trend")
        assert res.statistic < 0.05
        assert not res.rejected

    @given(st.integers(0, 500), st.floats(0.2, 50.0), st.floats(-100.0, 100.0))
    @settings(max_examples=20, deadline=None)
    def test_affine_invariance(self, seed, a, b):
        s = random_walk(seed, t=60)
        res1 = kpss_test(s, "intercept")
        res2 = kpss_test(Series("t", 1900, a * s.values + b), "intercept")
        assert res1.statistic == pytest.approx(res2.statistic, abs=1e-8)


class TestPerron:
    def test_random_walk_fails_to_reject(self):
        res = perron_test(random_walk(4, t=60), "both")
        assert res.break_year is not None
        assert (res.statistic < res.critical_value_5pct) == res.rejected

    def test_broken_trend_rejected_with_break_located(self):
        rng = np.random.default_rng(11)
        t = np.arange(60)
        b = 30
        y = 5.0 + 0.4 * t + np.where(t >= b, 2.0 * (t - b) + 4.0, 0.0) + rng.normal(0, 1.0, 60)
        res = perron_test(Series("bt", 1900, y), "both")
        assert res.rejected
        assert abs(res.break_year - (1900 + b)) <= 1

    def test_single_candidate_matches_fixed_break_regression(self):
        s = random_walk(5, t=50)
        year = 1925
        res = perron_test(s, "both", candidate_range=(year, year))
        assert res.break_year == year
        dy, X = _perron_design(s.values, res.lags_used, res.lags_used, year - 1900, "both")
        fit = ols_fit(dy, X)
        assert res.statistic == pytest.approx(float(fit.t_ratios(0)[0]), abs=1e-10)

    def test_trimming_bounds(self):
        with pytest.raises(ParameterError):
            perron_test(random_walk(1, t=60), trimming=0.6)
        with pytest.raises(InsufficientDataError):
            perron_test(random_walk(1, t=20))

    def test_unknown_model_rejected(self):
        with pytest.raises(ParameterError):
            perron_test(random_walk(1, t=60), model="bogus")


class TestIntegrationOrder:
    def test_random_walk_is_i1(self):
        dec = integration_order(random_walk(6, t=150, drift=0.3))
        assert dec.order == "I1"

    def test_white_noise_is_i0(self):
        dec = integration_order(white_noise(6, t=150))
        assert dec.order == "I0"

    def test_twice_integrated_is_inconclusive(self):
        rng = np.random.default_rng(13)
        s = Series("i2", 1900, np.cumsum(np.cumsum(rng.standard_normal(150))))
        dec = integration_order(s)
        assert dec.order == "inconclusive"

    def test_kpss_agreement_flag_present(self):
        dec = integration_order(random_walk(8, t=150, drift=0.3))
        assert isinstance(dec.kpss_agrees, bool)


class TestMonteCarloSize:
    """Smaller companions to the acceptance-gate experiments."""

    def test_adf_size_quick(self):
        from cointlab.montecarlo import adf_size

        res = adf_size(seed=21, n_reps=400, t=200)
        assert abs(res.rejection_rate - 0.05) <= 0.03

    def test_kpss_size_quick(self):
        from cointlab.montecarlo import kpss_size

        res = kpss_size(seed=22, n_reps=400, t=200)
        assert abs(res.rejection_rate - 0.05) <= 0.03
