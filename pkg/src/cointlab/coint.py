"""Johansen maximum-likelihood cointegration testing and VECM estimation.

The reduced-rank machinery follows the standard two-step concentration:
regress both the first differences and the lagged levels on the
short-run terms (lagged differences plus deterministics), form the
moment matrices S_ij of the two residual sets, and solve the symmetric
whitened eigenproblem

    S11^{-1/2} S10 S00^{-1} S01 S11^{-1/2} w = lambda w,

which keeps every eigenvalue inside [0, 1).  Trace and max-eigen
statistics use the effective sample after lagging and differencing.
The default deterministic case is an unrestricted constant, matching
the compiled critical values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import stats

from . import critical_values as cv
from .errors import NormalizationError, ParameterError, SingularMatrixError
from .regression import SystemFit, TestResult, system_ols, wald_block_test
from .series import Dataset

DET_CASES = ("none", "const")


@dataclass(frozen=True)
class JohansenResult:
    eigenvalues: NDArray[np.float64]
    trace_stats: NDArray[np.float64]
    maxeig_stats: NDArray[np.float64]
    trace_critical: NDArray[np.float64]
    maxeig_critical: NDArray[np.float64]
    selected_rank: int
    maxeig_rank: int
    beta: NDArray[np.float64]  # columns ordered by eigenvalue, v'S11v = 1
    alpha: NDArray[np.float64]
    det_case: str
    lag_order: int
    t_eff: int
    roles: tuple[str, ...]

    @property
    def n_vars(self) -> int:
        return self.eigenvalues.size

    @property
    def ranks_agree(self) -> bool:
        return self.selected_rank == self.maxeig_rank


def _concentrate(
    d: Dataset, p: int, det_case: str
) -> tuple[NDArray[np.float64], NDArray[np.float64], int]:
    """Residuals R0 (of dy_t) and R1 (of y_{t-1}) after the short-run sweep."""
    if p < 1:
        raise ParameterError("Johansen requires a levels lag order of at least 1")
    if det_case not in DET_CASES:
        raise ParameterError(f"det_case must be one of {DET_CASES}, got {det_case!r}")
    data = d.matrix()
    T, n = data.shape
    dy = np.diff(data, axis=0)
    t_eff = T - p
    targets = dy[p - 1 :, :]
    lagged_level = data[p - 1 : T - 1, :]
    cols = []
    for lag in range(1, p):
        cols.append(dy[p - 1 - lag : dy.shape[0] - lag, :])
    if det_case == "const":
        cols.append(np.ones((t_eff, 1)))
    if cols:
        Z = np.hstack(cols)
        if t_eff <= Z.shape[1]:
            raise ParameterError(
                f"effective sample {t_eff} too small for {Z.shape[1]} short-run terms"
            )
        zz = Z.T @ Z
        try:
            proj = np.linalg.solve(zz, Z.T)
        except np.linalg.LinAlgError as exc:
            raise SingularMatrixError("short-run regressor matrix is singular") from exc
        r0 = targets - Z @ (proj @ targets)
        r1 = lagged_level - Z @ (proj @ lagged_level)
    else:
        r0, r1 = targets, lagged_level
    return r0, r1, t_eff


def _reduced_rank_eig(
    r0: NDArray[np.float64], r1: NDArray[np.float64], t_eff: int
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    s00 = r0.T @ r0 / t_eff
    s01 = r0.T @ r1 / t_eff
    s11 = r1.T @ r1 / t_eff
    try:
        s00_inv = np.linalg.inv(s00)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("singular S00 moment matrix") from exc
    try:
        w11 = np.linalg.inv(np.linalg.cholesky(s11))
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("lagged-level moment matrix not positive definite") from exc
    # symmetric whitened problem keeps eigenvalues real and in [0, 1)
    M = w11 @ s01.T @ s00_inv @ s01 @ w11.T
    M = 0.5 * (M + M.T)
    eigvals, eigvecs = np.linalg.eigh(M)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, 1.0 - 1e-12)
    beta = w11.T @ eigvecs[:, order]  # satisfies beta' S11 beta = I
    alpha = s01 @ beta
    return eigvals, beta, alpha, s01


def johansen_test(d: Dataset, p: int, det_case: str = "const") -> JohansenResult:
    """Trace and max-eigen cointegration tests on a levels VAR(p).

    trace(r) = -T sum_{i>r} ln(1 - lambda_i) and
    maxeig(r) = -T ln(1 - lambda_{r+1}); the selected rank is the first
    r whose trace statistic stays below its 5% critical value.
    """
    r0, r1, t_eff = _concentrate(d, p, det_case)
    eigvals, beta, alpha, _ = _reduced_rank_eig(r0, r1, t_eff)
    n = d.n_vars

    log_terms = np.log(1.0 - eigvals)
    trace = -t_eff * np.cumsum(log_terms[::-1])[::-1]
    maxeig = -t_eff * log_terms
    trace_crit = np.array([cv.johansen_critical(n - r, "trace", det_case) for r in range(n)])
    maxeig_crit = np.array([cv.johansen_critical(n - r, "maxeig", det_case) for r in range(n)])

    def first_below(stats_vec, crit_vec):
        for r in range(n):
            if stats_vec[r] < crit_vec[r]:
                return r
        return n

    return JohansenResult(
        eigenvalues=eigvals,
        trace_stats=trace,
        maxeig_stats=maxeig,
        trace_critical=trace_crit,
        maxeig_critical=maxeig_crit,
        selected_rank=first_below(trace, trace_crit),
        maxeig_rank=first_below(maxeig, maxeig_crit),
        beta=beta,
        alpha=alpha,
        det_case=det_case,
        lag_order=p,
        t_eff=t_eff,
        roles=d.roles,
    )


def cointegrating_vectors(res: JohansenResult, r: int) -> NDArray[np.float64]:
    """First r cointegrating vectors, each scaled so the lead coefficient is 1."""
    if r < 1:
        raise ParameterError("rank must be at least 1 to extract cointegrating vectors")
    if r > res.n_vars:
        raise ParameterError(f"rank {r} exceeds system dimension {res.n_vars}")
    vecs = res.beta[:, :r].copy()
    for j in range(r):
        lead = vecs[0, j]
        if abs(lead) < 1e-12:
            raise NormalizationError(
                f"cointegrating vector {j} has a zero coefficient on {res.roles[0]}"
            )
        vecs[:, j] /= lead
    return vecs


@dataclass(frozen=True)
class VecmFit:
    """Error-correction model: dy_t on ECT_{t-1}, lagged dy, deterministics."""

    dataset: Dataset
    rank: int
    lag_order: int  # levels lag p; the model uses p-1 lagged differences
    beta: NDArray[np.float64]  # n x r, lead coefficient normalized to 1
    fit: SystemFit
    ect_series: NDArray[np.float64]  # t_eff x r values of beta' y_{t-1}
    det_case: str

    @property
    def diff_lags(self) -> int:
        return self.lag_order - 1

    @property
    def alpha(self) -> NDArray[np.float64]:
        """Adjustment coefficients: rows = ECT index, columns = equation."""
        return self.fit.coefficients[: self.rank, :]

    def coefficient_table(self, role: str) -> list[tuple[str, float, float, float, float]]:
        """(label, coefficient, std err, t ratio, p value) rows for one equation."""
        eq = self.dataset.role_index(role)
        se = self.fit.standard_errors(eq)
        tr = self.fit.t_ratios(eq)
        dof = self.fit.t_eff - self.fit.k
        out = []
        for i, lab in enumerate(self.fit.column_labels):
            p_val = 2.0 * float(stats.t.sf(abs(tr[i]), dof)) if se[i] > 0 else math.nan
            out.append((lab, float(self.fit.coefficients[i, eq]), float(se[i]), float(tr[i]), p_val))
        return out

    def ect_test(self, role: str, ect_index: int = 0, level: float = 0.05) -> TestResult:
        """t-test on an error-correction coefficient in one equation."""
        if self.rank == 0:
            raise ParameterError("no error-correction terms in a rank-0 model")
        if not 0 <= ect_index < self.rank:
            raise ParameterError(f"ect_index {ect_index} outside 0..{self.rank - 1}")
        eq = self.dataset.role_index(role)
        tr = self.fit.t_ratios(eq)[ect_index]
        dof = self.fit.t_eff - self.fit.k
        p_val = 2.0 * float(stats.t.sf(abs(tr), dof))
        return TestResult(
            name=f"ect[{ect_index}] in d.{role}",
            statistic=float(tr),
            distribution="t",
            df=(float(dof),),
            p_value=p_val,
            level=level,
        )


def vecm_fit(d: Dataset, p: int, r: int, det_case: str = "const") -> VecmFit:
    """Estimate the VECM at rank r with p-1 lagged differences.

    The cointegrating space comes from the reduced-rank eigenproblem at
    this lag order; given beta, the remaining coefficients are
    equation-by-equation least squares, which is the ML solution.
    """
    if p < 2 and r > 0:
        raise ParameterError("vecm needs p >= 2 so at least one lagged difference exists")
    n = d.n_vars
    if not 0 <= r <= n:
        raise ParameterError(f"rank {r} outside 0..{n}")

    data = d.matrix()
    T = data.shape[0]
    dy = np.diff(data, axis=0)
    t_eff = T - p
    targets = dy[p - 1 :, :]
    lagged_level = data[p - 1 : T - 1, :]

    cols: list[NDArray[np.float64]] = []
    labels: list[str] = []
    if r > 0:
        res = johansen_test(d, p, det_case)
        beta = cointegrating_vectors(res, r)
        ect = lagged_level @ beta
        cols.append(ect)
        labels.extend(f"ect{j + 1}.L1" for j in range(r))
    else:
        beta = np.zeros((n, 0))
        ect = np.zeros((t_eff, 0))
    for lag in range(1, p):
        cols.append(dy[p - 1 - lag : dy.shape[0] - lag, :])
        labels.extend(f"d.{role}.L{lag}" for role in d.roles)
    if det_case == "const":
        cols.append(np.ones((t_eff, 1)))
        labels.append("const")
    X = np.hstack([c if c.ndim == 2 else c[:, None] for c in cols])
    fit = system_ols(
        targets,
        X,
        column_labels=tuple(labels),
        target_labels=tuple(f"d.{role}" for role in d.roles),
    )
    return VecmFit(
        dataset=d,
        rank=r,
        lag_order=p,
        beta=beta,
        fit=fit,
        ect_series=ect,
        det_case=det_case,
    )


def vecm_granger(
    fit: VecmFit, cause: str, effect: str, level: float = 0.05
) -> tuple[TestResult, TestResult | None]:
    """Short-run and long-run causality from one variable to another.

    Short run: Wald chi-square on every lagged-difference coefficient of
    ``cause`` in the ``effect`` equation (df = p-1).  Long run: t-test
    on the leading error-correction coefficient in that equation, or
    None when the model has rank 0.
    """
    if cause == effect:
        raise ParameterError("cause and effect must differ")
    eq = fit.dataset.role_index(effect)
    block = [
        i for i, lab in enumerate(fit.fit.column_labels)
        if lab.startswith(f"d.{cause}.L")
    ]
    short = wald_block_test(
        fit.fit, eq, block, name=f"granger {cause}->{effect} (short run)", level=level
    )
    long_run = fit.ect_test(effect, 0, level) if fit.rank > 0 else None
    return short, long_run
