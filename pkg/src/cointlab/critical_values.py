"""Compiled critical-value tables used by every decision rule.

The 5% entries are authoritative for all reject/fail-to-reject calls in
the toolkit; 1% and 10% entries are carried for reporting only.  Sources
are the standard published tables: Dickey-Fuller response surfaces for
T near 40 (MacKinnon 1991/2010), Kwiatkowski-Phillips-Schmidt-Shin
(1992) Table 1, Perron (1997) innovational-outlier model, the
MacKinnon-Haug-Michelis (1999) quantiles for the Johansen tests with an
unrestricted constant, and Bai-Perron (2003) sup-F(l+1 | l) values for
q = 4 shifting regressors at 15% trimming.
"""

from __future__ import annotations

from .errors import ParameterError

# test statistic rejects the unit-root null when it is BELOW the value
ADF_CRITICAL = {
    "intercept": {0.01: -3.61, 0.05: -2.94, 0.10: -2.61},
    "intercept_trend": {0.01: -4.21, 0.05: -3.53, 0.10: -3.19},
}

# KPSS rejects the stationarity null when the statistic EXCEEDS the value
KPSS_CRITICAL = {
    "intercept": {0.01: 0.739, 0.05: 0.46, 0.10: 0.347},
    "intercept_trend": {0.01: 0.216, 0.05: 0.146, 0.10: 0.119},
}

# minimum-t break-search statistic; reject below the value
PERRON_CRITICAL = {0.01: -5.92, 0.05: -5.23, 0.10: -4.92}

# keyed by n - r (number of common trends under the null), 5% level,
# unrestricted-constant case
JOHANSEN_TRACE_CRITICAL = {
    1: 3.841466,
    2: 15.49471,
    3: 29.79707,
    4: 47.85613,
}
JOHANSEN_MAXEIG_CRITICAL = {
    1: 3.841466,
    2: 14.26460,
    3: 21.13162,
    4: 27.58434,
}

# no-deterministic-term case, 5% level (MacKinnon 1996 response surface)
JOHANSEN_TRACE_CRITICAL_NONE = {
    1: 4.1296,
    2: 12.3212,
    3: 24.2761,
    4: 40.1749,
}
JOHANSEN_MAXEIG_CRITICAL_NONE = {
    1: 4.1296,
    2: 11.2246,
    3: 17.7961,
    4: 24.1592,
}

# sequential sup-F of l vs l+1 breaks, index l = 0..3, 5% level
BAI_PERRON_SEQ_CRITICAL = (16.19, 18.11, 18.93, 19.64)


def adf_critical(deterministic: str, level: float = 0.05) -> float:
    try:
        return ADF_CRITICAL[deterministic][level]
    except KeyError:
        raise ParameterError(
            f"no ADF critical value for deterministic={deterministic!r} level={level}"
        ) from None


def kpss_critical(deterministic: str, level: float = 0.05) -> float:
    try:
        return KPSS_CRITICAL[deterministic][level]
    except KeyError:
        raise ParameterError(
            f"no KPSS critical value for deterministic={deterministic!r} level={level}"
        ) from None


def perron_critical(level: float = 0.05) -> float:
    try:
        return PERRON_CRITICAL[level]
    except KeyError:
        raise ParameterError(f"no Perron critical value for level={level}") from None


def johansen_critical(n_minus_r: int, statistic: str, det_case: str = "const") -> float:
    """5% quantile for the trace or max-eigen statistic."""
    if det_case == "const":
        table = JOHANSEN_TRACE_CRITICAL if statistic == "trace" else JOHANSEN_MAXEIG_CRITICAL
    elif det_case == "none":
        table = (
            JOHANSEN_TRACE_CRITICAL_NONE
            if statistic == "trace"
            else JOHANSEN_MAXEIG_CRITICAL_NONE
        )
    else:
        raise ParameterError(f"no critical values bundled for det_case={det_case!r}")
    try:
        return table[n_minus_r]
    except KeyError:
        raise ParameterError(
            f"no Johansen critical value for {n_minus_r} common trends"
        ) from None


def bai_perron_critical(l: int) -> float:
    """5% value for the sup-F test of l vs l+1 breaks."""
    if not 0 <= l < len(BAI_PERRON_SEQ_CRITICAL):
        raise ParameterError(
            f"no sup-F critical value bundled for {l} vs {l + 1} breaks"
        )
    return BAI_PERRON_SEQ_CRITICAL[l]
