"""Seeded size experiments for the toolkit's tests.

Each experiment simulates under the test's null, applies the decision
rule exactly as the pipeline would, and reports the rejection rate at
the nominal 5% level.  Replication r of an experiment seeded s draws
from ``default_rng([s, r])`` so results are independent of execution
order and safe to parallelize.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .breaks import BreakModel, supf_test
from .coint import cointegrating_vectors, johansen_test
from .diagnostics import breusch_godfrey, jarque_bera, white_test
from .regression import ols_fit, wald_block_test
from .series import Dataset, Series, align
from .unitroot import adf_test, kpss_test
from .var import var_fit, var_granger


@dataclass(frozen=True)
class SizeResult:
    experiment: str
    n_reps: int
    sample_size: int
    rejections: int

    @property
    def rejection_rate(self) -> float:
        return self.rejections / self.n_reps


def _rng(seed: int, rep: int) -> np.random.Generator:
    return np.random.default_rng([seed, rep])


def adf_size(seed: int, n_reps: int = 2000, t: int = 200) -> SizeResult:
    """Rejection rate of the ADF test on pure random walks."""
    rej = 0
    for rep in range(n_reps):
        y = np.cumsum(_rng(seed, rep).standard_normal(t))
        res = adf_test(Series("rw", 1900, y), "intercept")
        rej += res.rejected
    return SizeResult("adf", n_reps, t, rej)


def kpss_size(seed: int, n_reps: int = 2000, t: int = 200) -> SizeResult:
    """Rejection rate of the KPSS test on i.i.d. noise."""
    rej = 0
    for rep in range(n_reps):
        y = _rng(seed, rep).standard_normal(t)
        res = kpss_test(Series("wn", 1900, y), "intercept")
        rej += res.rejected
    return SizeResult("kpss", n_reps, t, rej)


def breusch_godfrey_size(
    seed: int, n_reps: int = 2000, t: int = 200, lags: int = 2
) -> SizeResult:
    """BG LM rejection rate on serially uncorrelated regression errors."""
    rej = 0
    for rep in range(n_reps):
        rng = _rng(seed, rep)
        x = rng.standard_normal((t, 2))
        y = x @ np.array([1.0, -0.5]) + rng.standard_normal(t)
        fit = ols_fit(y, np.column_stack([x, np.ones(t)]))
        rej += breusch_godfrey(fit, lags).reject
    return SizeResult("breusch_godfrey", n_reps, t, rej)


def white_size(seed: int, n_reps: int = 2000, t: int = 200) -> SizeResult:
    """White test rejection rate under homoskedastic errors."""
    rej = 0
    for rep in range(n_reps):
        rng = _rng(seed, rep)
        x = rng.standard_normal((t, 2))
        y = x @ np.array([1.0, 1.0]) + rng.standard_normal(t)
        fit = ols_fit(y, np.column_stack([x, np.ones(t)]))
        rej += white_test(fit, cross_terms=True).reject
    return SizeResult("white", n_reps, t, rej)


def jarque_bera_size(seed: int, n_reps: int = 2000, t: int = 200) -> SizeResult:
    """JB rejection rate on Gaussian samples."""
    rej = 0
    for rep in range(n_reps):
        u = _rng(seed, rep).standard_normal(t)
        rej += jarque_bera(u).reject
    return SizeResult("jarque_bera", n_reps, t, rej)


def var_granger_size(
    seed: int, n_reps: int = 2000, t: int = 200, p: int = 2
) -> SizeResult:
    """VAR Granger-causality rejection rate on independent white noise."""
    rej = 0
    for rep in range(n_reps):
        rng = _rng(seed, rep)
        d = align(
            [
                ("a", Series("a", 1900, rng.standard_normal(t))),
                ("b", Series("b", 1900, rng.standard_normal(t))),
            ]
        )
        fit = var_fit(d, p)
        rej += var_granger(fit, "a", "b").reject
    return SizeResult("var_granger", n_reps, t, rej)


def wald_block_size(
    seed: int, n_reps: int = 2000, t: int = 500, block: int = 3
) -> SizeResult:
    """Wald block-test rejection rate when the true block is zero."""
    rej = 0
    for rep in range(n_reps):
        rng = _rng(seed, rep)
        x_active = rng.standard_normal((t, 2))
        x_null = rng.standard_normal((t, block))
        y = x_active @ np.array([1.0, -1.0]) + rng.standard_normal(t)
        X = np.column_stack([x_active, x_null, np.ones(t)])
        fit = ols_fit(y, X)
        res = wald_block_test(fit, 0, list(range(2, 2 + block)))
        rej += res.reject
    return SizeResult("wald_block", n_reps, t, rej)


def supf_size(seed: int, n_reps: int = 1000, t: int = 120) -> SizeResult:
    """Sup-F 0-vs-1 rejection rate on a stable 4-regressor model."""
    rej = 0
    for rep in range(n_reps):
        rng = _rng(seed, rep)
        X = np.column_stack([np.ones(t), rng.standard_normal((t, 3))])
        y = X @ np.array([1.0, 0.5, -0.5, 0.25]) + rng.standard_normal(t)
        res = supf_test(BreakModel(y, X, trimming=0.15, max_breaks=2), 0)
        rej += res.reject
    return SizeResult("supf_0v1", n_reps, t, rej)


def johansen_rank_experiment(
    seed: int, n_reps: int = 200, t: int = 400
) -> tuple[int, float]:
    """Bivariate drifted rank-1 system: (count of rank-1 picks, median beta error).

    The DGP shares one drifted random-walk trend; the cointegrating
    vector is (1, -1) and the stationary gap is an AR(0.5).
    """
    picks = 0
    errors = []
    for rep in range(n_reps):
        rng = _rng(seed, rep)
        w = np.cumsum(0.5 + rng.standard_normal(t))
        e = np.zeros((t, 2))
        shocks = rng.standard_normal((t, 2))
        for i in range(1, t):
            e[i] = 0.5 * e[i - 1] + shocks[i]
        d = align(
            [
                ("y1", Series("y1", 1900, w + e[:, 0])),
                ("y2", Series("y2", 1900, w + e[:, 1])),
            ]
        )
        res = johansen_test(d, 2)
        if res.selected_rank == 1:
            picks += 1
        if res.selected_rank >= 1:
            beta = cointegrating_vectors(res, 1)
            errors.append(abs(beta[1, 0] + 1.0))
    return picks, float(np.median(errors))


SIZE_EXPERIMENTS: dict[str, Callable[..., SizeResult]] = {
    "adf": adf_size,
    "kpss": kpss_size,
    "breusch_godfrey": breusch_godfrey_size,
    "white": white_size,
    "jarque_bera": jarque_bera_size,
    "var_granger": var_granger_size,
    "wald_block": wald_block_size,
}
