"""Least-squares engine: single-equation and common-regressor systems.

All estimators in the toolkit reduce to ordinary least squares on a
design matrix, so this module owns the numerics: rank checking, the
Gaussian system log-likelihood, per-equation coefficient covariances,
Wald tests on coefficient blocks, and the Bartlett-kernel long-run
variance used by the KPSS statistic.

Conventions (fixed across the toolkit):

* ``resid_cov`` uses the MLE divisor ``t_eff`` so that the reported
  log-likelihood follows the per-observation Gaussian system form.
* per-equation coefficient covariances use the divisor ``t_eff - k``.
* rank deficiency is detected from relative singular values below
  ``RANK_TOLERANCE`` and reported, never silently repaired.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy import stats

from .errors import (
    DegreesOfFreedomError,
    InvalidRestrictionError,
    ParameterError,
    SingularMatrixError,
)
from .series import Dataset

RANK_TOLERANCE = 1e-10

LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class TestResult:
    """Outcome of one hypothesis test at a stated significance level."""

    name: str
    statistic: float
    distribution: str
    df: tuple[float, ...]
    p_value: float
    level: float = 0.05

    @property
    def reject(self) -> bool:
        return self.p_value < self.level

    def __str__(self) -> str:
        dof = ",".join(f"{d:g}" for d in self.df)
        return (
            f"{self.name}: stat={self.statistic:.4f} ~ {self.distribution}({dof}) "
            f"p={self.p_value:.4f} -> {'reject' if self.reject else 'fail to reject'} "
            f"at {self.level:g}"
        )


@dataclass(frozen=True)
class DesignMatrix:
    """Targets and lagged/deterministic regressors on a common window."""

    targets: NDArray[np.float64]
    regressors: NDArray[np.float64]
    target_labels: tuple[str, ...]
    column_labels: tuple[str, ...]
    t_eff: int

    def __post_init__(self):
        if self.targets.shape[0] != self.t_eff or self.regressors.shape[0] != self.t_eff:
            raise ParameterError("target/regressor row counts disagree with t_eff")

    def block(self, role: str) -> list[int]:
        """Column indices of all lag terms of ``role`` (level or differenced)."""
        prefixes = (f"{role}.L", f"d.{role}.L")
        return [
            i for i, lab in enumerate(self.column_labels) if lab.startswith(prefixes)
        ]


@dataclass(frozen=True)
class SystemFit:
    """Multivariate least squares with a common regressor matrix.

    ``coefficients`` is (k x n): column j holds equation j's
    coefficients in regressor order.
    """

    coefficients: NDArray[np.float64]
    residuals: NDArray[np.float64]
    resid_cov: NDArray[np.float64]
    log_likelihood: float
    ssr_per_equation: NDArray[np.float64]
    coefficient_cov: tuple[NDArray[np.float64], ...]
    r_squared: NDArray[np.float64]
    regressors: NDArray[np.float64] = field(repr=False)
    targets: NDArray[np.float64] = field(repr=False)
    column_labels: tuple[str, ...] = ()
    target_labels: tuple[str, ...] = ()

    @property
    def t_eff(self) -> int:
        return self.residuals.shape[0]

    @property
    def n_eq(self) -> int:
        return self.residuals.shape[1]

    @property
    def k(self) -> int:
        return self.coefficients.shape[0]

    @property
    def fitted(self) -> NDArray[np.float64]:
        return self.targets - self.residuals

    def standard_errors(self, equation: int = 0) -> NDArray[np.float64]:
        return np.sqrt(np.diag(self.coefficient_cov[equation]))

    def t_ratios(self, equation: int = 0) -> NDArray[np.float64]:
        se = self.standard_errors(equation)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(se > 0, self.coefficients[:, equation] / se, np.nan)


def _check_rank(X: NDArray[np.float64]) -> None:
    sv = np.linalg.svd(X, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] / sv[0] < RANK_TOLERANCE:
        # identify a minimal set of columns involved in the dependency
        dependent: list[int] = []
        for j in range(1, X.shape[1]):
            sub = X[:, : j + 1]
            s = np.linalg.svd(sub, compute_uv=False)
            if s[-1] / s[0] < RANK_TOLERANCE:
                dependent.append(j)
        raise SingularMatrixError(
            f"design matrix is rank deficient (columns {dependent} linearly "
            "dependent on earlier columns)",
            dependent_columns=tuple(dependent),
        )


def _has_intercept(X: NDArray[np.float64]) -> bool:
    return any(np.allclose(X[:, j], X[0, j]) and X[0, j] != 0 for j in range(X.shape[1]))


def system_ols(
    Y: NDArray[np.float64],
    X: NDArray[np.float64],
    column_labels: tuple[str, ...] = (),
    target_labels: tuple[str, ...] = (),
) -> SystemFit:
    """Equation-by-equation OLS of the columns of Y on a shared X.

    Returns the stacked coefficient matrix together with the MLE residual
    covariance and the Gaussian system log-likelihood

        logL = -(T*n/2)(1 + ln 2pi) - (T/2) ln det(resid_cov).
    """
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if Y.shape[0] == 1:
        Y = Y.T
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ParameterError("regressor matrix must be 2-d")
    t_eff, k = X.shape
    if Y.shape[0] != t_eff:
        raise ParameterError(f"y has {Y.shape[0]} rows, X has {t_eff}")
    if t_eff <= k:
        raise DegreesOfFreedomError(
            f"{t_eff} observations cannot support {k} regressors"
        )
    _check_rank(X)

    n = Y.shape[1]
    coef, _, _, _ = np.linalg.lstsq(X, Y, rcond=None)
    coef = coef.reshape(k, n)
    resid = Y - X @ coef
    ssr = np.sum(resid**2, axis=0)
    resid_cov = (resid.T @ resid) / t_eff

    sign, logdet = np.linalg.slogdet(resid_cov)
    if sign <= 0:
        # rank loss happens only with exact fits or duplicated targets;
        # report an unbounded likelihood rather than a spurious number
        logdet = -np.inf
    loglik = -0.5 * t_eff * n * (1.0 + LOG_2PI) - 0.5 * t_eff * logdet

    xtx_inv = np.linalg.inv(X.T @ X)
    dof = t_eff - k
    coef_cov = tuple((ssr[j] / dof) * xtx_inv for j in range(n))

    if _has_intercept(X):
        tss = np.sum((Y - Y.mean(axis=0)) ** 2, axis=0)
    else:
        tss = np.sum(Y**2, axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        r2 = np.where(tss > 0, 1.0 - ssr / tss, 0.0)

    return SystemFit(
        coefficients=coef,
        residuals=resid,
        resid_cov=resid_cov,
        log_likelihood=float(loglik),
        ssr_per_equation=ssr,
        coefficient_cov=coef_cov,
        r_squared=r2,
        regressors=X,
        targets=Y,
        column_labels=column_labels,
        target_labels=target_labels,
    )


def ols_fit(
    y: NDArray[np.float64],
    X: NDArray[np.float64],
    column_labels: tuple[str, ...] = (),
) -> SystemFit:
    """Single-equation OLS; a SystemFit with n = 1."""
    y = np.asarray(y, dtype=float).reshape(-1, 1)
    return system_ols(y, X, column_labels=column_labels)


def wald_block_test(
    fit: SystemFit,
    equation: int,
    coefficient_indices: list[int] | tuple[int, ...],
    name: str = "wald block",
    level: float = 0.05,
) -> TestResult:
    """Chi-square Wald test that a block of coefficients is jointly zero.

    statistic = b' V^{-1} b on the selected block, df = block size, with
    V the equation's coefficient covariance restricted to the block.
    """
    idx = list(coefficient_indices)
    if not idx:
        raise InvalidRestrictionError("empty coefficient restriction set")
    k = fit.k
    if any(i < 0 or i >= k for i in idx):
        raise InvalidRestrictionError(f"restriction indices {idx} outside 0..{k - 1}")
    if equation < 0 or equation >= fit.n_eq:
        raise InvalidRestrictionError(f"equation index {equation} outside 0..{fit.n_eq - 1}")

    b = fit.coefficients[idx, equation]
    V = fit.coefficient_cov[equation][np.ix_(idx, idx)]
    try:
        stat = float(b @ np.linalg.solve(V, b))
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(f"singular covariance block for indices {idx}") from exc
    if not np.isfinite(stat):
        raise SingularMatrixError(f"singular covariance block for indices {idx}")
    stat = max(stat, 0.0)
    df = len(idx)
    p = float(stats.chi2.sf(stat, df))
    return TestResult(name, stat, "chi2", (float(df),), p, level)


def newey_west_lrv(u: NDArray[np.float64], bandwidth: int) -> float:
    """Bartlett-kernel long-run variance of a scalar series.

    sigma^2 = gamma_0 + 2 sum_{j=1..bw} (1 - j/(bw+1)) gamma_j, with
    autocovariances computed about the sample mean using divisor T.
    """
    u = np.asarray(u, dtype=float).ravel()
    T = u.size
    if bandwidth < 0:
        raise ParameterError("bandwidth must be nonnegative")
    if bandwidth >= T:
        raise ParameterError(f"bandwidth {bandwidth} must be below series length {T}")
    v = u - u.mean()
    gamma0 = float(v @ v) / T
    acc = gamma0
    for j in range(1, bandwidth + 1):
        gamma_j = float(v[j:] @ v[:-j]) / T
        acc += 2.0 * (1.0 - j / (bandwidth + 1.0)) * gamma_j
    return max(acc, 0.0)


def lag_matrix(
    d: Dataset,
    p: int,
    intercept: bool = True,
    trend: bool = False,
    differenced: bool = False,
) -> DesignMatrix:
    """Stack current values against lags 1..p of every variable.

    Regressor columns are variable-major (all lags of the first role,
    then the next role, ...) followed by deterministic terms, so that the
    lag block of any one variable is contiguous for Wald restrictions.
    With ``differenced`` the targets and lags are first differences and
    one extra observation is consumed.
    """
    if p < 0:
        raise ParameterError("lag order must be nonnegative")
    data = d.matrix()
    labels = list(d.roles)
    if differenced:
        data = np.diff(data, axis=0)
        labels = [f"d.{r}" for r in labels]
    T, n = data.shape
    t_eff = T - p
    cols: list[NDArray[np.float64]] = []
    names: list[str] = []
    for j in range(n):
        for lag in range(1, p + 1):
            cols.append(data[p - lag : T - lag, j])
            names.append(f"{labels[j]}.L{lag}")
    if intercept:
        cols.append(np.ones(t_eff))
        names.append("const")
    if trend:
        cols.append(np.arange(1.0, t_eff + 1.0))
        names.append("trend")
    if not cols:
        raise ParameterError("design has no regressors: set p >= 1 or a deterministic term")
    X = np.column_stack(cols)
    if t_eff <= X.shape[1]:
        raise DegreesOfFreedomError(
            f"effective sample {t_eff} too small for {X.shape[1]} regressors"
        )
    targets = data[p:, :]
    return DesignMatrix(
        targets=targets,
        regressors=X,
        target_labels=tuple(labels),
        column_labels=tuple(names),
        t_eff=t_eff,
    )
