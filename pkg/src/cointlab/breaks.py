"""Multiple structural breaks by global SSR minimization.

Pure structural change: every regression coefficient shifts at each
break.  The optimal partition for any break count comes from dynamic
programming over a table of segment SSRs (Bai & Perron 2003); the
number of breaks is decided by the sequential sup-F procedure that
inserts one extra break into the current best partition and compares
the scaled improvement against the compiled critical values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .critical_values import BAI_PERRON_SEQ_CRITICAL, bai_perron_critical
from .errors import ParameterError
from .regression import TestResult


@dataclass(frozen=True)
class BreakModel:
    """Regression whose coefficients may shift at unknown dates."""

    y: NDArray[np.float64]
    X: NDArray[np.float64]
    trimming: float = 0.15
    max_breaks: int = 5
    start_year: int | None = None

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float).ravel()
        X = np.asarray(self.X, dtype=float)
        if X.ndim != 2 or X.shape[0] != y.size:
            raise ParameterError("y and X must have matching row counts")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "X", X)
        if not 0.0 < self.trimming < 0.5:
            raise ParameterError("trimming must lie in (0, 0.5)")
        if self.min_segment < X.shape[1] + 1:
            raise ParameterError(
                f"minimum segment length {self.min_segment} cannot identify "
                f"{X.shape[1]} coefficients"
            )

    @property
    def n_obs(self) -> int:
        return self.y.size

    @property
    def n_coef(self) -> int:
        return self.X.shape[1]

    @property
    def min_segment(self) -> int:
        return int(math.ceil(self.trimming * self.n_obs))

    def index_to_year(self, i: int) -> int:
        return i if self.start_year is None else self.start_year + i

    def max_feasible_breaks(self) -> int:
        return self.n_obs // self.min_segment - 1


@dataclass(frozen=True)
class BreakResult:
    num_breaks: int
    break_years: tuple[int, ...]
    f_statistics: tuple[float, ...]
    critical_values: tuple[float, ...]
    segment_ssr: float


def _segment_ssr_table(m: BreakModel) -> NDArray[np.float64]:
    """ssr[i, j] = SSR of the regression on rows i..j inclusive.

    Cumulative cross-moment sums turn every admissible segment's normal
    equations into an O(1) lookup, and the whole batch of small systems
    is solved in one stacked call.
    """
    y, X = m.y, m.X
    T, k = X.shape
    h = m.min_segment
    cum_xx = np.zeros((T + 1, k, k))
    np.cumsum(np.einsum("ti,tj->tij", X, X), axis=0, out=cum_xx[1:])
    cum_xy = np.zeros((T + 1, k))
    np.cumsum(X * y[:, None], axis=0, out=cum_xy[1:])
    cum_yy = np.concatenate(([0.0], np.cumsum(y * y)))

    starts, ends = np.nonzero(np.triu(np.ones((T, T), dtype=bool), k=h - 1))
    A = cum_xx[ends + 1] - cum_xx[starts]
    b = cum_xy[ends + 1] - cum_xy[starts]
    c = cum_yy[ends + 1] - cum_yy[starts]
    table = np.full((T, T), np.inf)
    try:
        betas = np.linalg.solve(A, b[..., None])[..., 0]
        table[starts, ends] = np.maximum(c - np.einsum("ij,ij->i", b, betas), 0.0)
    except np.linalg.LinAlgError:
        # some segment is rank deficient: fall back to least squares per pair
        for i, j, Aij, bij, cij in zip(starts, ends, A, b, c):
            beta, *_ = np.linalg.lstsq(Aij, bij, rcond=None)
            table[i, j] = max(cij - bij @ beta, 0.0)
    return table


def _optimal_partition(
    ssr: NDArray[np.float64], T: int, h: int, k: int
) -> tuple[float, list[int]]:
    """Best k-break partition of rows 0..T-1 by dynamic programming.

    Returns the minimal total SSR and the 0-based indices of the first
    observation of each new segment.  SSR ties break toward the earliest
    break dates so output is deterministic.
    """
    if k == 0:
        return float(ssr[0, T - 1]), []
    # cost[b][t] = best SSR of rows 0..t using b breaks
    cost = np.full((k + 1, T), np.inf)
    arg = np.full((k + 1, T), -1, dtype=int)
    cost[0, h - 1 :] = ssr[0, h - 1 :]
    for b in range(1, k + 1):
        for t in range((b + 1) * h - 1, T):
            # last segment starts at s, previous part ends at s-1
            best, best_s = np.inf, -1
            for s in range(b * h, t - h + 2):
                c = cost[b - 1, s - 1] + ssr[s, t]
                if c < best - 1e-12:
                    best, best_s = c, s
            cost[b, t] = best
            arg[b, t] = best_s
    if not np.isfinite(cost[k, T - 1]):
        raise ParameterError(f"{k} breaks infeasible for T={T} at segment length {h}")
    breaks: list[int] = []
    t = T - 1
    for b in range(k, 0, -1):
        s = int(arg[b, t])
        breaks.append(s)
        t = s - 1
    return float(cost[k, T - 1]), sorted(breaks)


def global_breaks(
    m: BreakModel, k: int, _table: NDArray[np.float64] | None = None
) -> tuple[tuple[int, ...], float]:
    """SSR-minimizing partition into k+1 segments.

    Returns the break dates (first index/year of each new segment,
    strictly increasing) and the achieved total SSR.
    """
    if k < 0 or k > m.max_feasible_breaks():
        raise ParameterError(
            f"{k} breaks infeasible: trimming {m.trimming} on T={m.n_obs} "
            f"allows at most {m.max_feasible_breaks()}"
        )
    table = _segment_ssr_table(m) if _table is None else _table
    ssr, idx = _optimal_partition(table, m.n_obs, m.min_segment, k)
    return tuple(m.index_to_year(i) for i in idx), ssr


def _insertion_ssr(
    table: NDArray[np.float64], T: int, h: int, breaks: list[int]
) -> float:
    """Best SSR from adding one break inside some segment of a partition."""
    bounds = [0] + breaks + [T]
    best = np.inf
    for seg in range(len(bounds) - 1):
        lo, hi = bounds[seg], bounds[seg + 1] - 1
        outside = sum(
            table[bounds[s], bounds[s + 1] - 1] for s in range(len(bounds) - 1) if s != seg
        )
        for s in range(lo + h, hi - h + 2):
            c = outside + table[lo, s - 1] + table[s, hi]
            if c < best:
                best = c
    return best


def supf_test(
    m: BreakModel, l: int, _table: NDArray[np.float64] | None = None
) -> TestResult:
    """Sup-F test of l breaks against l+1.

    The statistic is the largest scaled SSR improvement from inserting
    one admissible break into the optimal l-break partition,

        F = (SSR_l - SSR_ins) / (SSR_ins / (T - (l+2) k)),

    compared against the compiled 5% critical value for this l.
    """
    if l < 0:
        raise ParameterError("l must be nonnegative")
    if l + 1 > m.max_feasible_breaks():
        raise ParameterError(f"{l + 1} breaks infeasible for T={m.n_obs}")
    critical = bai_perron_critical(l)

    table = _segment_ssr_table(m) if _table is None else _table
    T, h, k = m.n_obs, m.min_segment, m.n_coef
    ssr_l, breaks_l = _optimal_partition(table, T, h, l)
    ssr_ins = _insertion_ssr(table, T, h, breaks_l)
    if not np.isfinite(ssr_ins):
        raise ParameterError(f"no admissible insertion point for l={l}")
    dof = T - (l + 2) * k
    if dof <= 0:
        raise ParameterError("no residual degrees of freedom for the sup-F statistic")
    improvement = max(ssr_l - ssr_ins, 0.0)
    if improvement <= 1e-12 * max(ssr_l, 1e-300):
        stat = 0.0  # nothing to explain (e.g. an exact fit everywhere)
    elif ssr_ins <= 0.0:
        stat = math.inf
    else:
        stat = improvement / (ssr_ins / dof)
    # decision by the compiled critical value; the p-value slot carries
    # only the side of the cut, not an exact tail probability
    p_proxy = 0.0 if stat > critical else 1.0
    return TestResult(
        name=f"sup-F {l} vs {l + 1}",
        statistic=float(stat),
        distribution=f"bai-perron(q={k}, l={l})",
        df=(float(k),),
        p_value=p_proxy,
        level=0.05,
    )


def sequential_breaks(m: BreakModel) -> BreakResult:
    """Sequential sup-F procedure: grow the break count until non-rejection.

    Tests l vs l+1 for l = 0, 1, ... capped by both ``max_breaks`` and
    the depth of the compiled critical-value table; the reported dates
    come from the global partition at the selected count.
    """
    table = _segment_ssr_table(m)
    max_l = min(m.max_breaks, m.max_feasible_breaks(), len(BAI_PERRON_SEQ_CRITICAL))
    stats: list[float] = []
    crits: list[float] = []
    num = 0
    for l in range(max_l):
        res = supf_test(m, l, _table=table)
        stats.append(res.statistic)
        crits.append(bai_perron_critical(l))
        if res.statistic > crits[-1]:
            num = l + 1
        else:
            break
    years, ssr = global_breaks(m, num, _table=table)
    return BreakResult(
        num_breaks=num,
        break_years=years,
        f_statistics=tuple(stats),
        critical_values=tuple(crits),
        segment_ssr=ssr,
    )
