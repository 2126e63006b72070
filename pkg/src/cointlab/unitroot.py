"""Stationarity and integration-order testing.

Three tests on annual series: the augmented Dickey-Fuller regression
with Schwarz-criterion lag choice, the KPSS statistic with a Bartlett
long-run variance, and a minimum-t unit-root test that searches over an
endogenous structural break (innovational-outlier form with intercept
and slope shift, after Perron 1997).  Decisions are made against the
compiled 5% critical values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from . import critical_values as cv
from .errors import DegenerateInputError, InsufficientDataError, ParameterError
from .regression import newey_west_lrv, ols_fit
from .series import Series, diff

INTERCEPT = "intercept"
INTERCEPT_TREND = "intercept_trend"


@dataclass(frozen=True)
class UnitRootResult:
    test_name: str
    deterministic: str
    statistic: float
    critical_value_5pct: float
    lags_used: int
    decision: str
    break_year: int | None = None

    @property
    def rejected(self) -> bool:
        return self.decision == "reject_null"

    def __str__(self) -> str:
        brk = f" break={self.break_year}" if self.break_year is not None else ""
        return (
            f"{self.test_name}[{self.deterministic}] stat={self.statistic:.3f} "
            f"cv5%={self.critical_value_5pct:.3f} lags={self.lags_used}{brk} "
            f"-> {self.decision}"
        )


def _decide(statistic: float, critical: float, reject_below: bool) -> str:
    if reject_below:
        return "reject_null" if statistic < critical else "fail_to_reject"
    return "reject_null" if statistic > critical else "fail_to_reject"


def default_max_lags(t: int) -> int:
    return int(math.floor(12.0 * (t / 100.0) ** 0.25))


def break_test_max_lags(t: int) -> int:
    # the break search runs one regression per candidate date, so the lag
    # pool stays small to keep the minimum-t statistic from mining noise
    return int(math.floor(4.0 * (t / 100.0) ** 0.25))


def _adf_design(
    y: NDArray[np.float64], k: int, offset: int, deterministic: str
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Build Dy_t on [y_{t-1}, Dy_{t-1..k}, deterministics] rows offset.. ."""
    dy = np.diff(y)
    T = dy.size
    rows = slice(offset, T)
    cols = [y[offset : T][:, None]]  # y_{t-1} aligned with dy_t
    for j in range(1, k + 1):
        cols.append(dy[offset - j : T - j][:, None])
    n_rows = T - offset
    cols.append(np.ones((n_rows, 1)))
    if deterministic == INTERCEPT_TREND:
        cols.append(np.arange(offset + 1.0, T + 1.0)[:, None])
    return dy[rows], np.hstack(cols)


def adf_test(
    s: Series,
    deterministic: str = INTERCEPT,
    max_lags: int | None = None,
) -> UnitRootResult:
    """ADF t-test on the lagged level, augmentation order by Schwarz.

    The candidate lags 0..max_lags are compared on the common sample
    implied by max_lags; the chosen order is then refit on the longest
    sample it allows.
    """
    y = s.values
    if max_lags is None:
        max_lags = default_max_lags(len(y) - 1)
    if max_lags < 0:
        raise ParameterError("max_lags must be nonnegative")
    if len(y) < max_lags + 10:
        raise InsufficientDataError(
            f"need at least max_lags + 10 = {max_lags + 10} observations, have {len(y)}"
        )

    best_k, best_sic = 0, np.inf
    for k in range(max_lags + 1):
        dy_k, X_k = _adf_design(y, k, max_lags, deterministic)
        fit = ols_fit(dy_k, X_k)
        t_used = dy_k.size
        sigma2 = fit.ssr_per_equation[0] / t_used
        sic = math.log(sigma2) + X_k.shape[1] * math.log(t_used) / t_used
        if sic < best_sic - 1e-12:
            best_sic, best_k = sic, k

    dy_b, X_b = _adf_design(y, best_k, best_k, deterministic)
    fit = ols_fit(dy_b, X_b)
    stat = float(fit.t_ratios(0)[0])
    critical = cv.adf_critical(deterministic)
    return UnitRootResult(
        test_name="ADF",
        deterministic=deterministic,
        statistic=stat,
        critical_value_5pct=critical,
        lags_used=best_k,
        decision=_decide(stat, critical, reject_below=True),
    )


def kpss_bandwidth(t: int) -> int:
    return int(math.floor(4.0 * (t / 100.0) ** 0.25))


def kpss_test(s: Series, deterministic: str = INTERCEPT) -> UnitRootResult:
    """KPSS statistic: partial sums of deterministic-regression residuals.

    statistic = sum_t S_t^2 / (T^2 * lrv) with the Bartlett long-run
    variance at the automatic bandwidth floor(4 (T/100)^(1/4)).  The null
    is stationarity, so large values reject.
    """
    y = s.values
    T = y.size
    if T < 20:
        raise InsufficientDataError(f"KPSS needs at least 20 observations, have {T}")
    if np.ptp(y) == 0.0:
        raise DegenerateInputError("constant series has zero long-run variance")

    X = np.ones((T, 1))
    if deterministic == INTERCEPT_TREND:
        X = np.hstack([X, np.arange(1.0, T + 1.0)[:, None]])
    elif deterministic != INTERCEPT:
        raise ParameterError(f"unknown deterministic spec {deterministic!r}")
    fit = ols_fit(y, X)
    resid = fit.residuals[:, 0]

    critical = cv.kpss_critical(deterministic)
    scale = float(np.mean(y**2))
    if fit.ssr_per_equation[0] <= 1e-24 * max(scale, 1.0):
        # deterministics explain the series exactly: trivially stationary
        stat = 0.0
    else:
        lrv = newey_west_lrv(resid, kpss_bandwidth(T))
        if lrv <= 0.0:
            raise DegenerateInputError("zero long-run variance in KPSS residuals")
        partial = np.cumsum(resid)
        stat = float(np.sum(partial**2) / (T**2 * lrv))
    return UnitRootResult(
        test_name="KPSS",
        deterministic=deterministic,
        statistic=stat,
        critical_value_5pct=critical,
        lags_used=kpss_bandwidth(T),
        decision=_decide(stat, critical, reject_below=False),
    )


def _perron_design(
    y: NDArray[np.float64],
    k: int,
    offset: int,
    b: int,
    model: str,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Innovational-outlier regression with a new regime starting at index b.

    Regressor order: y_{t-1}, Dy lags, const, trend, then break terms
    (level shift DU, slope shift DT, one-period pulse D).
    """
    dy = np.diff(y)
    T = dy.size
    t_index = np.arange(1, T + 1)  # aligned with dy_t, i.e. period t
    cols = [y[offset:T][:, None]]
    for j in range(1, k + 1):
        cols.append(dy[offset - j : T - j][:, None])
    n_rows = T - offset
    cols.append(np.ones((n_rows, 1)))
    cols.append(t_index[offset:][:, None].astype(float))
    du = (t_index >= b).astype(float)
    dt = np.where(t_index >= b, t_index - b + 1.0, 0.0)
    pulse = (t_index == b).astype(float)
    if model in ("intercept_break", "both"):
        cols.append(du[offset:][:, None])
    if model in ("trend_break", "both"):
        cols.append(dt[offset:][:, None])
    cols.append(pulse[offset:][:, None])
    return dy[offset:], np.hstack(cols)


def perron_test(
    s: Series,
    model: str = "both",
    trimming: float = 0.15,
    max_lags: int | None = None,
    candidate_range: tuple[int, int] | None = None,
) -> UnitRootResult:
    """Minimum-t unit-root test over endogenous break dates.

    For each admissible break date the innovational-outlier regression
    is fit (lag order by Schwarz per candidate) and the t-ratio on the
    lagged level recorded; the statistic is the minimum over candidates
    and the break year its argmin.  ``candidate_range`` restricts the
    search to a fixed window of years (a single year gives the
    fixed-break test).
    """
    if model not in ("intercept_break", "trend_break", "both"):
        raise ParameterError(f"unknown break model {model!r}")
    if not 0.0 < trimming <= 0.25:
        raise ParameterError("trimming must lie in (0, 0.25]")
    y = s.values
    T = y.size
    if T < 25:
        raise InsufficientDataError(f"break search needs at least 25 observations, have {T}")
    if max_lags is None:
        max_lags = break_test_max_lags(T - 1)

    # b indexes the first observation of the new regime (0-based position);
    # the slope dummy needs two pre-break rows beyond the lag window and the
    # dummy trio needs three post-break rows to stay identified
    lo = max(int(math.ceil(trimming * T)), max_lags + 3)
    hi = min(int(math.floor((1.0 - trimming) * T)), T - 3)
    if candidate_range is not None:
        c_lo = candidate_range[0] - s.start_year
        c_hi = candidate_range[1] - s.start_year
        lo, hi = max(lo, c_lo), min(hi, c_hi)
    if lo > hi:
        raise ParameterError("no feasible break window under the given trimming")

    best_stat, best_b, best_k = np.inf, None, 0
    for b in range(lo, hi + 1):
        best_sic, k_b = np.inf, 0
        for k in range(max_lags + 1):
            dy_k, X_k = _perron_design(y, k, max_lags, b, model)
            fit = ols_fit(dy_k, X_k)
            t_used = dy_k.size
            sigma2 = fit.ssr_per_equation[0] / t_used
            sic = math.log(sigma2) + X_k.shape[1] * math.log(t_used) / t_used
            if sic < best_sic - 1e-12:
                best_sic, k_b = sic, k
        dy_b, X_b = _perron_design(y, k_b, k_b, b, model)
        fit = ols_fit(dy_b, X_b)
        # the target is dy_t, so the lagged-level coefficient estimates
        # alpha - 1 and its plain t-ratio tests the unit-root null
        stat = float(fit.t_ratios(0)[0])
        if stat < best_stat:
            best_stat, best_b, best_k = stat, b, k_b

    critical = cv.perron_critical()
    return UnitRootResult(
        test_name="PERRON",
        deterministic=INTERCEPT_TREND if model != "intercept_break" else INTERCEPT,
        statistic=best_stat,
        critical_value_5pct=critical,
        lags_used=best_k,
        decision=_decide(best_stat, critical, reject_below=True),
        break_year=s.start_year + best_b,
    )


@dataclass(frozen=True)
class IntegrationDecision:
    order: str  # "I0" | "I1" | "inconclusive"
    level_adf: UnitRootResult
    diff_adf: UnitRootResult
    level_kpss: UnitRootResult
    diff_kpss: UnitRootResult

    @property
    def kpss_agrees(self) -> bool:
        if self.order == "I0":
            return not self.level_kpss.rejected
        if self.order == "I1":
            return self.level_kpss.rejected and not self.diff_kpss.rejected
        return False


def integration_order(s: Series, deterministic: str = INTERCEPT) -> IntegrationDecision:
    """Classify a series as I(0), I(1), or inconclusive.

    ADF drives the call: I(0) when the level rejects, I(1) when the
    level fails but the first difference rejects.  KPSS runs as
    corroboration and any disagreement is flagged on the result.
    """
    if len(s) < 25:
        raise InsufficientDataError("integration-order check needs at least 25 observations")
    level_adf = adf_test(s, deterministic)
    diff_adf = adf_test(diff(s, 1), deterministic)
    level_kpss = kpss_test(s, deterministic)
    diff_kpss = kpss_test(diff(s, 1), deterministic)
    if level_adf.rejected:
        order = "I0"
    elif diff_adf.rejected:
        order = "I1"
    else:
        order = "inconclusive"
    return IntegrationDecision(order, level_adf, diff_adf, level_kpss, diff_kpss)
