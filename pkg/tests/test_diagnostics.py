import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cointlab.diagnostics import (
    breusch_godfrey,
    jarque_bera,
    jarque_bera_joint,
    ramsey_reset,
    vif,
    white_test,
)
from cointlab.errors import DegenerateInputError, ParameterError
from cointlab.regression import ols_fit


def linear_fit(seed, t=200, hetero=False, ar=0.0, quadratic=False):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(t, 2))
    u = np.zeros(t)
    shocks = rng.normal(size=t)
    for i in range(t):
        u[i] = ar * u[i - 1] + shocks[i] if i else shocks[i]
    if hetero:
        u = u * np.sqrt(0.2 + x[:, 0] ** 2)
    y = 1.0 + x[:, 0] - 0.5 * x[:, 1] + u
    if quadratic:
        y = y + 0.6 * x[:, 0] ** 2
    return ols_fit(y, np.column_stack([x, np.ones(t)]))


class TestBreuschGodfrey:
    def test_autocorrelated_residuals_detected(self):
        fit = linear_fit(0, t=300, ar=0.7)
        assert breusch_godfrey(fit, 1).p_value < 0.01

    def test_clean_residuals_pass(self):
        fit = linear_fit(1, t=300)
        assert breusch_godfrey(fit, 2).p_value > 0.05

    def test_zero_lags_is_a_parameter_error(self):
        fit = linear_fit(2)
        with pytest.raises(ParameterError):
            breusch_godfrey(fit, 0)

    def test_lags_beyond_sample_rejected(self):
        fit = linear_fit(3, t=50)
        with pytest.raises(ParameterError):
            breusch_godfrey(fit, 50)


class TestJarqueBera:
    def test_exact_normal_moments_give_zero(self):
        # symmetric eight-point sample with kurtosis exactly 3:
        # {+-a, +-1 x3} with a^2 = 9 + sqrt(96)
        a = math.sqrt(9.0 + math.sqrt(96.0))
        u = np.array([-a, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, a])
        res = jarque_bera(u)
        assert res.statistic == pytest.approx(0.0, abs=1e-12)
        assert res.p_value == pytest.approx(1.0)

    def test_skewed_sample_rejected(self):
        rng = np.random.default_rng(4)
        u = rng.exponential(size=500)
        assert jarque_bera(u).p_value < 0.01

    def test_zero_variance_degenerate(self):
        with pytest.raises(DegenerateInputError):
            jarque_bera(np.ones(20))

    def test_too_short_rejected(self):
        with pytest.raises(ParameterError):
            jarque_bera(np.arange(5.0))

    @given(st.integers(0, 1000), st.floats(0.1, 50.0), st.floats(-100.0, 100.0))
    @settings(max_examples=30, deadline=None)
    def test_affine_invariance(self, seed, a, b):
        rng = np.random.default_rng(seed)
        u = rng.normal(size=60)
        s1 = jarque_bera(u).statistic
        s2 = jarque_bera(a * u + b).statistic
        assert s1 == pytest.approx(s2, abs=1e-10)

    def test_joint_version_counts_all_equations(self):
        rng = np.random.default_rng(5)
        res = jarque_bera_joint(rng.normal(size=(300, 3)))
        assert res.df == (6.0,)
        assert res.p_value > 0.01


class TestWhite:
    def test_heteroskedastic_errors_detected(self):
        fit = linear_fit(6, t=500, hetero=True)
        assert white_test(fit).p_value < 0.01

    def test_homoskedastic_errors_pass(self):
        fit = linear_fit(7, t=500)
        assert white_test(fit).p_value > 0.05

    def test_cross_terms_flag_recorded_in_name(self):
        fit = linear_fit(8)
        assert "cross terms" in white_test(fit, cross_terms=True).name
        assert "no cross terms" in white_test(fit, cross_terms=False).name


class TestReset:
    def test_quadratic_misspecification_detected(self):
        fit = linear_fit(9, t=300, quadratic=True)
        res = ramsey_reset(fit, 2)
        assert res.f_test.p_value < 0.01
        assert res.lr_test.p_value < 0.01

    def test_linear_model_mostly_passes(self):
        rejected = 0
        for rep in range(300):
            fit = linear_fit([10, rep], t=120)
            res = ramsey_reset(fit, 2)
            rejected += res.f_test.p_value < 0.05
        assert rejected <= 0.07 * 300  # non-rejection in >= 93%

    def test_single_power_makes_t_and_f_agree(self):
        fit = linear_fit(11)
        res = ramsey_reset(fit, 2)
        assert res.t_test.p_value == pytest.approx(res.f_test.p_value, abs=1e-10)
        assert res.t_test.statistic**2 == pytest.approx(res.f_test.statistic, rel=1e-8)

    def test_max_power_below_two_rejected(self):
        with pytest.raises(ParameterError):
            ramsey_reset(linear_fit(12), 1)


class TestVif:
    def test_orthogonal_columns_give_unity(self):
        t = 64
        grid = 2.0 * np.pi * np.arange(t) / t
        X = np.column_stack([np.sin(3 * grid), np.cos(4 * grid), np.sin(5 * grid)])
        out = vif(X, ("a", "b", "c"))
        for v in out.values():
            assert v == pytest.approx(1.0, abs=1e-8)

    def test_duplicated_column_flags_infinity(self):
        rng = np.random.default_rng(13)
        x = rng.normal(size=50)
        out = vif(np.column_stack([x, x, rng.normal(size=50)]), ("a", "b", "c"))
        assert math.isinf(out["a"]) and math.isinf(out["b"])
        assert math.isfinite(out["c"])

    @given(st.integers(0, 500), st.floats(0.01, 100.0))
    @settings(max_examples=25, deadline=None)
    def test_invariant_to_column_rescaling(self, seed, scale):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(40, 3))
        base = vif(X, ("a", "b", "c"))
        X2 = X.copy()
        X2[:, 1] *= scale
        scaled = vif(X2, ("a", "b", "c"))
        for key in base:
            assert base[key] == pytest.approx(scaled[key], rel=1e-6)

    def test_needs_two_varying_columns(self):
        with pytest.raises(ParameterError):
            vif(np.ones((30, 2)), ("a", "b"))


def test_diagnostics_are_deterministic():
    fit = linear_fit(14)
    first = (
        breusch_godfrey(fit, 2).statistic,
        jarque_bera(fit.residuals[:, 0]).statistic,
        white_test(fit).statistic,
        ramsey_reset(fit, 2).f_test.statistic,
        tuple(vif(fit.regressors[:, :2], ("a", "b")).values()),
    )
    second = (
        breusch_godfrey(fit, 2).statistic,
        jarque_bera(fit.residuals[:, 0]).statistic,
        white_test(fit).statistic,
        ramsey_reset(fit, 2).f_test.statistic,
        tuple(vif(fit.regressors[:, :2], ("a", "b")).values()),
    )
    assert first == second


def test_breusch_godfrey_size_quick():
    from cointlab.montecarlo import breusch_godfrey_size

    res = breusch_godfrey_size(seed=24, n_reps=400, t=200)
    assert abs(res.rejection_rate - 0.05) <= 0.03


def test_white_size_quick():
    from cointlab.montecarlo import white_size

    res = white_size(seed=25, n_reps=400, t=200)
    assert abs(res.rejection_rate - 0.05) <= 0.03
