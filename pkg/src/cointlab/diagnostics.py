"""Residual and specification diagnostics for a fitted equation.

Breusch-Godfrey LM serial correlation, Jarque-Bera normality (single
equation and Cholesky-orthogonalized joint form), White
heteroskedasticity, the RESET functional-form triple (t, F, LR), and
variance inflation factors.  Every test is a deterministic function of
the fit it receives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import stats

from .errors import DegenerateInputError, ParameterError
from .regression import SystemFit, TestResult, ols_fit


def breusch_godfrey(fit: SystemFit, lags: int, equation: int = 0, level: float = 0.05) -> TestResult:
    """LM test for serial correlation up to the given lag order.

    Auxiliary regression of the residuals on the original regressors
    plus lagged residuals (pre-sample lags set to zero); the statistic
    is T times the auxiliary R-squared, chi-square with df = lags.
    """
    if lags < 1:
        raise ParameterError("breusch_godfrey needs at least one lag")
    u = fit.residuals[:, equation]
    T = u.size
    if lags >= T:
        raise ParameterError(f"lag order {lags} must be below sample size {T}")
    lagged = np.zeros((T, lags))
    for j in range(1, lags + 1):
        lagged[j:, j - 1] = u[:-j]
    X_aux = np.hstack([fit.regressors, lagged])
    aux = ols_fit(u, X_aux)
    stat = T * float(aux.r_squared[0])
    p = float(stats.chi2.sf(stat, lags))
    return TestResult("breusch-godfrey LM", stat, "chi2", (float(lags),), p, level)


def jarque_bera(u: NDArray[np.float64], level: float = 0.05) -> TestResult:
    """JB = (T/6)(S^2 + (K-3)^2/4) with divisor-T moment estimators."""
    u = np.asarray(u, dtype=float).ravel()
    T = u.size
    if T < 8:
        raise ParameterError(f"jarque_bera needs at least 8 observations, have {T}")
    centered = u - u.mean()
    m2 = float(np.mean(centered**2))
    if m2 <= 0.0:
        raise DegenerateInputError("zero-variance input to jarque_bera")
    skew = float(np.mean(centered**3)) / m2**1.5
    kurt = float(np.mean(centered**4)) / m2**2
    stat = T / 6.0 * (skew**2 + 0.25 * (kurt - 3.0) ** 2)
    p = float(stats.chi2.sf(stat, 2))
    return TestResult("jarque-bera", stat, "chi2", (2.0,), p, level)


def jarque_bera_joint(U: NDArray[np.float64], level: float = 0.05) -> TestResult:
    """System normality: JB summed over Cholesky-orthogonalized residuals."""
    U = np.asarray(U, dtype=float)
    if U.ndim != 2:
        raise ParameterError("joint test needs a T x n residual matrix")
    T, n = U.shape
    centered = U - U.mean(axis=0)
    cov = centered.T @ centered / T
    try:
        L = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise DegenerateInputError("singular residual covariance in joint JB") from exc
    W = centered @ np.linalg.inv(L).T
    stat = 0.0
    for j in range(n):
        stat += jarque_bera(W[:, j]).statistic
    p = float(stats.chi2.sf(stat, 2 * n))
    return TestResult("jarque-bera joint", stat, "chi2", (2.0 * n,), p, level)


def _dedup_columns(cols: list[NDArray[np.float64]]) -> list[NDArray[np.float64]]:
    kept: list[NDArray[np.float64]] = []
    for c in cols:
        if np.ptp(c) == 0.0 and kept:
            continue  # constant duplicates the intercept
        if any(np.allclose(c, k) for k in kept):
            continue
        kept.append(c)
    return kept


def white_test(
    fit: SystemFit, cross_terms: bool | None = None, equation: int = 0, level: float = 0.05
) -> TestResult:
    """White test: squared residuals on regressors, squares, crosses.

    ``cross_terms=None`` applies them only when the regressor count is
    small enough (k <= 5) to leave degrees of freedom on short samples.
    Statistic T R^2, chi-square with df = auxiliary regressors minus 1.
    """
    u2 = fit.residuals[:, equation] ** 2
    X = fit.regressors
    T, k = X.shape
    if cross_terms is None:
        cross_terms = k <= 5
    nonconst = [j for j in range(k) if np.ptp(X[:, j]) > 0.0]
    cols: list[NDArray[np.float64]] = [X[:, j] for j in nonconst]
    cols += [X[:, j] ** 2 for j in nonconst]
    if cross_terms:
        for a in range(len(nonconst)):
            for b in range(a + 1, len(nonconst)):
                cols.append(X[:, nonconst[a]] * X[:, nonconst[b]])
    cols = _dedup_columns(cols)
    X_aux = np.column_stack([np.ones(T)] + cols)
    if X_aux.shape[1] >= T:
        raise ParameterError(
            f"auxiliary regression needs {X_aux.shape[1]} columns but only {T} rows"
        )
    aux = ols_fit(u2, X_aux)
    df = X_aux.shape[1] - 1
    stat = T * float(aux.r_squared[0])
    p = float(stats.chi2.sf(stat, df))
    name = "white (cross terms)" if cross_terms else "white (no cross terms)"
    return TestResult(name, stat, "chi2", (float(df),), p, level)


@dataclass(frozen=True)
class ResetResult:
    t_test: TestResult
    f_test: TestResult
    lr_test: TestResult


def ramsey_reset(fit: SystemFit, max_power: int = 2, equation: int = 0, level: float = 0.05) -> ResetResult:
    """RESET triple: augment the regression with fitted-value powers.

    The t statistic always refers to the single squared-fitted-value
    augmentation; F and LR cover powers 2..max_power jointly.  With
    max_power = 2 the three statistics describe the same one-term
    augmentation, so the t and F p-values coincide.
    """
    if max_power < 2:
        raise ParameterError("max_power must be at least 2")
    y = fit.targets[:, equation]
    yhat = fit.fitted[:, equation]
    X = fit.regressors
    T, k = X.shape
    scale = float(np.std(yhat))
    if scale <= 0.0:
        raise DegenerateInputError("constant fitted values in RESET")
    z = (yhat - yhat.mean()) / scale  # standardized to keep powers well conditioned

    def augmented(n_powers: int) -> SystemFit:
        extra = np.column_stack([z ** (q + 1) for q in range(1, n_powers + 1)])
        return ols_fit(y, np.hstack([X, extra]))

    aux1 = augmented(1)
    dof1 = T - (k + 1)
    t_stat = float(aux1.t_ratios(0)[k])
    p_t = 2.0 * float(stats.t.sf(abs(t_stat), dof1))
    t_res = TestResult("reset t", t_stat, "t", (float(dof1),), p_t, level)

    m = max_power - 1
    aux = augmented(m)
    dof = T - (k + m)
    ssr0 = float(fit.ssr_per_equation[equation])
    ssr1 = float(aux.ssr_per_equation[0])
    f_stat = (ssr0 - ssr1) / m / (ssr1 / dof)
    p_f = float(stats.f.sf(f_stat, m, dof))
    f_res = TestResult("reset F", f_stat, "F", (float(m), float(dof)), p_f, level)

    lr_stat = T * math.log(ssr0 / ssr1) if ssr1 > 0 else math.inf
    p_lr = float(stats.chi2.sf(lr_stat, m))
    lr_res = TestResult("reset LR", lr_stat, "chi2", (float(m),), p_lr, level)
    return ResetResult(t_res, f_res, lr_res)


def vif(X: NDArray[np.float64], labels: tuple[str, ...]) -> dict[str, float]:
    """Variance inflation factors: 1/(1 - R_j^2) per non-constant column.

    Perfectly collinear columns report ``inf`` rather than raising.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != len(labels):
        raise ParameterError("labels must match the columns of X")
    nonconst = [j for j in range(X.shape[1]) if np.ptp(X[:, j]) > 0.0]
    if len(nonconst) < 2:
        raise ParameterError("vif needs at least two non-deterministic columns")
    out: dict[str, float] = {}
    T = X.shape[0]
    for j in nonconst:
        others = [c for c in nonconst if c != j]
        Xo = np.column_stack([np.ones(T)] + [X[:, c] for c in others])
        # rank-tolerant solve: duplicates among the other columns must not
        # taint this column's own inflation factor
        y = X[:, j]
        beta, *_ = np.linalg.lstsq(Xo, y, rcond=None)
        ssr = float(np.sum((y - Xo @ beta) ** 2))
        tss = float(np.sum((y - y.mean()) ** 2))
        r2 = 1.0 - ssr / tss
        out[labels[j]] = math.inf if r2 >= 1.0 - 1e-12 else 1.0 / (1.0 - r2)
    return out
