"""Levels VAR estimation, lag-order selection, causality, stability.

The information criteria follow the per-observation system convention

    AIC = (-2 logL + 2 kbar) / T
    SC  = (-2 logL + kbar ln T) / T
    HQ  = (-2 logL + 2 kbar ln ln T) / T

with kbar the total number of estimated coefficients, plus the
finite-sample FPE and the small-sample-corrected LR statistic against
the previous lag.  All candidate lags are estimated on the common
sample fixed by the largest lag so the criteria are comparable and the
LR column telescopes exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import stats

from .errors import ParameterError
from .regression import DesignMatrix, SystemFit, TestResult, lag_matrix, system_ols, wald_block_test
from .series import Dataset


@dataclass(frozen=True)
class VarFit:
    """A levels VAR(p) fit on a Dataset."""

    dataset: Dataset
    lag_order: int
    design: DesignMatrix
    fit: SystemFit
    intercept: bool = True
    trend: bool = False

    @property
    def n_vars(self) -> int:
        return self.dataset.n_vars

    @property
    def t_eff(self) -> int:
        return self.design.t_eff

    def coefficients(self, role: str) -> NDArray[np.float64]:
        """Coefficient vector of the equation for ``role``."""
        return self.fit.coefficients[:, self.dataset.role_index(role)]

    def standard_errors(self, role: str) -> NDArray[np.float64]:
        return self.fit.standard_errors(self.dataset.role_index(role))

    def t_ratios(self, role: str) -> NDArray[np.float64]:
        return self.fit.t_ratios(self.dataset.role_index(role))

    @property
    def intercepts(self) -> NDArray[np.float64]:
        j = self.design.column_labels.index("const")
        return self.fit.coefficients[j, :]


def var_fit(d: Dataset, p: int, intercept: bool = True, trend: bool = False) -> VarFit:
    """Per-equation least squares of each variable on lags 1..p of all."""
    design = lag_matrix(d, p, intercept=intercept, trend=trend)
    fit = system_ols(
        design.targets,
        design.regressors,
        column_labels=design.column_labels,
        target_labels=design.target_labels,
    )
    return VarFit(dataset=d, lag_order=p, design=design, fit=fit,
                  intercept=intercept, trend=trend)


@dataclass(frozen=True)
class LagSelectionRow:
    lag: int
    log_likelihood: float
    lr_statistic: float | None
    fpe: float
    aic: float
    sc: float
    hq: float


@dataclass(frozen=True)
class LagSelectionTable:
    rows: tuple[LagSelectionRow, ...]
    selected: dict[str, int]  # criterion -> starred lag
    t_eff: int

    def row(self, lag: int) -> LagSelectionRow:
        return self.rows[lag]


def information_criteria(log_likelihood: float, kbar: int, t: int) -> tuple[float, float, float]:
    """(AIC, SC, HQ) from the system log-likelihood, data-free identity."""
    base = -2.0 * log_likelihood
    aic = (base + 2.0 * kbar) / t
    sc = (base + kbar * math.log(t)) / t
    hq = (base + 2.0 * kbar * math.log(math.log(t))) / t
    return aic, sc, hq


def fpe_criterion(log_likelihood: float, n: int, k_star: int, t: int) -> float:
    """Final prediction error via the log-likelihood / det(Sigma) identity."""
    log_det = -2.0 * log_likelihood / t - n * (1.0 + math.log(2.0 * math.pi))
    return math.exp(log_det) * ((t + k_star) / (t - k_star)) ** n


def modified_lr(delta_loglik: float, t: int, k_star: int) -> float:
    """Small-sample LR against the previous lag: ((T - k*)/T) 2 dlogL."""
    return (t - k_star) / t * 2.0 * delta_loglik


def lag_order_select(
    d: Dataset,
    max_p: int,
    intercept: bool = True,
    trend: bool = False,
    level: float = 0.05,
) -> LagSelectionTable:
    """Criteria table for lags 0..max_p on the common sample.

    Stars: minima for FPE/AIC/SC/HQ; for LR the largest lag whose test
    against lag-1 rejects when working downward from max_p.  Ties go to
    the smaller lag.
    """
    if max_p < 1:
        raise ParameterError("max_p must be at least 1")
    n = d.n_vars
    t_eff = d.n_obs - max_p
    data = d.matrix()

    rows: list[LagSelectionRow] = []
    logliks: list[float] = []
    for p in range(max_p + 1):
        cols = []
        for j in range(n):
            for lag in range(1, p + 1):
                cols.append(data[max_p - lag : data.shape[0] - lag, j])
        det_count = 0
        if intercept:
            cols.append(np.ones(t_eff))
            det_count += 1
        if trend:
            cols.append(np.arange(1.0, t_eff + 1.0))
            det_count += 1
        X = np.column_stack(cols)
        fit = system_ols(data[max_p:, :], X)
        k_star = n * p + det_count
        kbar = n * k_star
        aic, sc, hq = information_criteria(fit.log_likelihood, kbar, t_eff)
        fpe = fpe_criterion(fit.log_likelihood, n, k_star, t_eff)
        lr = None
        if p > 0:
            lr = modified_lr(fit.log_likelihood - logliks[-1], t_eff, k_star)
        logliks.append(fit.log_likelihood)
        rows.append(LagSelectionRow(p, fit.log_likelihood, lr, fpe, aic, sc, hq))

    selected: dict[str, int] = {}
    for crit in ("fpe", "aic", "sc", "hq"):
        vals = [getattr(r, crit) for r in rows]
        selected[crit] = int(np.argmin(vals))
    lr_pick = 0
    chi2_cut = stats.chi2.ppf(1.0 - level, n * n)
    for p in range(max_p, 0, -1):
        if rows[p].lr_statistic is not None and rows[p].lr_statistic > chi2_cut:
            lr_pick = p
            break
    selected["lr"] = lr_pick
    return LagSelectionTable(rows=tuple(rows), selected=selected, t_eff=t_eff)


def var_granger(fit: VarFit, cause: str, effect: str, level: float = 0.05) -> TestResult:
    """Wald chi-square on all lags of ``cause`` in the ``effect`` equation."""
    if cause == effect:
        raise ParameterError("cause and effect must differ")
    eq = fit.dataset.role_index(effect)
    block = fit.design.block(cause)
    res = wald_block_test(
        fit.fit, eq, block, name=f"granger {cause}->{effect}", level=level
    )
    return res


def stability(fit: VarFit) -> NDArray[np.float64]:
    """Companion-matrix eigenvalue moduli, sorted descending.

    The VAR is stable when all moduli are below one.
    """
    n, p = fit.n_vars, fit.lag_order
    if p == 0:
        return np.array([])
    companion = np.zeros((n * p, n * p))
    # coefficient rows are variable-major (var j lags 1..p); regroup by lag
    for j in range(n):
        for lag in range(1, p + 1):
            col = fit.design.column_labels.index(f"{fit.dataset.roles[j]}.L{lag}")
            companion[:n, (lag - 1) * n + j] = fit.fit.coefficients[col, :]
    if p > 1:
        companion[n:, : n * (p - 1)] = np.eye(n * (p - 1))
    moduli = np.abs(np.linalg.eigvals(companion))
    return np.sort(moduli)[::-1]
