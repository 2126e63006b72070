"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one PASS/FAIL line (visible with ``pytest -s`` or in
the captured output of a failing run), and the assertions enforce the
same condition, so the suite is green exactly when every criterion
holds.
"""

import itertools
import math

import numpy as np
import pytest

from cointlab import critical_values as cv
from cointlab.breaks import BreakModel, global_breaks
from cointlab.pipeline import PipelineConfig, run_pipeline
from cointlab.regression import ols_fit
from cointlab.var import information_criteria, modified_lr


def report(name: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)


@pytest.fixture(scope="module")
def replication():
    return run_pipeline(PipelineConfig(replicate=True))


def test_criterion_1_information_criteria_algebra():
    log_l, kbar = -201.1273, 4
    # derive the effective sample from the AIC identity first
    t = (-2.0 * log_l + 2.0 * kbar) / 12.06631
    t_eff = round(t)
    ok = abs(t - 34.0) < 0.01 and t_eff == 34
    aic, sc, hq = information_criteria(log_l, kbar, t_eff)
    ok &= abs(aic - 12.06631) <= 1e-4
    ok &= abs(sc - 12.24589) <= 1e-4
    ok &= abs(hq - 12.12755) <= 1e-4
    report("1 (information criteria)", ok, f"T={t_eff}, AIC={aic:.5f}, SC={sc:.5f}, HQ={hq:.5f}")
    assert ok


def test_criterion_2_modified_lr():
    lr = modified_lr(204.12614, 34, 5)
    ok = abs(lr - 348.2152) <= 1e-3
    report("2 (modified LR)", ok, f"LR={lr:.4f}")
    assert ok


def test_criterion_3_trace_maxeig_telescoping():
    tables = {
        "composite-index system": {
            "trace": (109.8168, 55.02444, 12.84718, 0.968748),
            "maxeig": (54.79236, 42.17726, 11.87843, 0.968748),
        },
        "institutions system": {
            "trace": (40.89917, 17.30756, 4.838794, 0.849338),
            "maxeig": (23.59161, 12.46877, 3.989456, 0.849338),
        },
        "markets system": {
            "trace": (117.3350, 53.74891, 12.76910, 0.444604),
            "maxeig": (63.58605, 40.97981, 12.32449, 0.444604),
        },
    }
    worst = 0.0
    for vals in tables.values():
        trace, maxeig = vals["trace"], vals["maxeig"]
        for r in range(3):
            worst = max(worst, abs(trace[r] - trace[r + 1] - maxeig[r]))
        worst = max(worst, abs(trace[3] - maxeig[3]))
    ok = worst <= 6e-5
    report("3 (telescoping identity)", ok, f"worst gap {worst:.2e}")
    assert ok


def test_criterion_4_critical_value_tables():
    checks = [
        cv.adf_critical("intercept") == -2.94,
        cv.adf_critical("intercept_trend") == -3.53,
        cv.kpss_critical("intercept") == 0.46,
        cv.kpss_critical("intercept_trend") == 0.146,
        cv.perron_critical() == -5.23,
        [cv.johansen_critical(n, "trace") for n in (4, 3, 2, 1)]
        == [47.85613, 29.79707, 15.49471, 3.841466],
        [cv.johansen_critical(n, "maxeig") for n in (4, 3, 2, 1)]
        == [27.58434, 21.13162, 14.26460, 3.841466],
        list(cv.BAI_PERRON_SEQ_CRITICAL) == [16.19, 18.11, 18.93, 19.64],
    ]
    ok = all(checks)
    report("4 (critical values)", ok)
    assert ok


def test_criterion_5_oracle_equivalence():
    # OLS against the independent normal-equations oracle
    rng = np.random.default_rng(2024)
    ols_ok = True
    for _ in range(100):
        X = rng.normal(size=(40, 3))
        y = rng.normal(size=40)
        mine = ols_fit(y, X).coefficients[:, 0]
        oracle = np.linalg.solve(X.T @ X, X.T @ y)
        ols_ok &= bool(np.allclose(mine, oracle, rtol=1e-8))

    # dynamic programming against exhaustive partition search
    def exhaustive(y, X, h, k):
        T = y.size

        def seg(lo, hi):
            b, *_ = np.linalg.lstsq(X[lo : hi + 1], y[lo : hi + 1], rcond=None)
            r = y[lo : hi + 1] - X[lo : hi + 1] @ b
            return float(r @ r)

        best = (None, np.inf)
        for breaks in itertools.combinations(range(1, T), k):
            bounds = (0,) + breaks + (T,)
            if any(bounds[i + 1] - bounds[i] < h for i in range(len(bounds) - 1)):
                continue
            total = sum(seg(bounds[i], bounds[i + 1] - 1) for i in range(len(bounds) - 1))
            if total < best[1] - 1e-12:
                best = (breaks, total)
        return best

    bp_ok = True
    for trial, k in [(0, 1), (1, 2), (2, 3)]:
        rng2 = np.random.default_rng(900 + trial)
        t = 24 + 3 * trial
        y = rng2.normal(size=t)
        for at in range(k):
            y[(at + 1) * t // (k + 1) :] += 3.0 * (-1.0) ** at
        X = np.ones((t, 1))
        m = BreakModel(y, X, trimming=0.12, max_breaks=4)
        dates, ssr = global_breaks(m, k)
        o_dates, o_ssr = exhaustive(y, X, m.min_segment, k)
        bp_ok &= dates == o_dates and abs(ssr - o_ssr) <= 1e-9 * max(o_ssr, 1.0)

    # Johansen on the synthetic rank-1 system
    from cointlab.montecarlo import johansen_rank_experiment

    picks, med_err = johansen_rank_experiment(seed=2024, n_reps=200, t=400)
    joh_ok = picks / 200 >= 0.95 and med_err <= 0.05

    ok = ols_ok and bp_ok and joh_ok
    report(
        "5 (oracle equivalence)",
        ok,
        f"ols={ols_ok}, breaks={bp_ok}, rank picks {picks}/200, median beta err {med_err:.4f}",
    )
    assert ok


def test_criterion_6_monte_carlo_size():
    from cointlab import montecarlo as mc

    results = {}
    for name in ("adf", "kpss", "breusch_godfrey", "white", "jarque_bera", "var_granger"):
        res = mc.SIZE_EXPERIMENTS[name](seed=2024, n_reps=2000, t=200)
        results[name] = res.rejection_rate
    ok = all(abs(rate - 0.05) <= 0.02 for rate in results.values())
    detail = ", ".join(f"{k}={v:.3f}" for k, v in results.items())
    report("6 (Monte Carlo size)", ok, detail)
    assert ok


def test_criterion_7_bundled_snapshot_replication(replication):
    oc = replication.outcomes
    ranks_ok = (
        oc[1].selected_rank == 2 and oc[2].selected_rank == 0 and oc[3].selected_rank == 2
    )

    fd_fwd = oc[1].short_run[("FD", "TRADE")]
    fd_rev = oc[1].short_run[("TRADE", "FD")]
    fmd_fwd = oc[3].short_run[("FMD", "TRADE")]
    fmd_rev = oc[3].short_run[("TRADE", "FMD")]
    granger_ok = (
        fd_fwd[1] < 0.05 and fmd_fwd[1] < 0.05 and fd_rev[1] >= 0.05 and fmd_rev[1] >= 0.05
    )

    t2f = oc[2].short_run[("TRADE", "FID")]
    var_ok = t2f[1] < 0.05

    ect_ok = (
        oc[1].ect_coefficient < 0
        and oc[1].ect_p_value < 0.10
        and oc[3].ect_coefficient < 0
        and oc[3].ect_p_value < 0.10
    )

    ok = ranks_ok and granger_ok and var_ok and ect_ok
    report(
        "7 (snapshot replication)",
        ok,
        f"ranks=({oc[1].selected_rank},{oc[2].selected_rank},{oc[3].selected_rank}), "
        f"FD->TRADE p={fd_fwd[1]:.4f}, FMD->TRADE p={fmd_fwd[1]:.4f}, "
        f"TRADE->FID p={t2f[1]:.4f}, ect=({oc[1].ect_coefficient:.3f},{oc[3].ect_coefficient:.3f})",
    )

    # numeric proximity to the published statistics, informational only
    from cointlab.ingest import bundled_snapshot_path, load_csv
    from cointlab.var import var_fit

    var2 = var_fit(
        load_csv(bundled_snapshot_path()).subset(("TRADE", "FID", "LGDP", "REER")), 2
    )
    lead = var2.coefficients("TRADE")[var2.design.column_labels.index("TRADE.L1")]
    published = {
        "FD->TRADE chi2": (fd_fwd[0], 33.10),
        "FMD->TRADE chi2": (fmd_fwd[0], 28.69),
        "TRADE->FID chi2": (t2f[0], 7.10),
        "ect eq1": (oc[1].ect_coefficient, -0.035),
        "ect eq3": (oc[3].ect_coefficient, -0.1045),
        "VAR TRADE own lag-1": (float(lead), 1.126),
    }
    for label, (got, target) in published.items():
        within = abs(got - target) <= 0.15 * abs(target)
        print(
            f"  informational +/-15%: {label}: observed {got:.4g} vs published "
            f"{target:.4g} -> {'within' if within else 'outside'}"
        )
    assert ok


def test_criterion_8_break_dates(replication):
    breaks = replication.outcomes[1].break_years
    ok = len(breaks) == 3 and all(
        abs(got - want) <= 2 for got, want in zip(breaks, (1998, 2008, 2014))
    )
    report("8 (break dates)", ok, f"found {breaks}")
    assert ok


def test_criterion_9_property_suites(replication, tmp_path):
    from cointlab.coint import johansen_test, vecm_fit
    from cointlab.diagnostics import jarque_bera, vif
    from cointlab.report import render_report
    from cointlab.series import Series, align
    from cointlab.unitroot import adf_test, kpss_test
    from cointlab.var import var_fit

    rng = np.random.default_rng(77)

    # eigenvalues live in [0, 1)
    w = np.cumsum(0.4 + rng.standard_normal(300))
    d = align(
        [
            ("y1", Series("y1", 1900, w + rng.standard_normal(300))),
            ("y2", Series("y2", 1900, w + rng.standard_normal(300))),
        ]
    )
    res = johansen_test(d, 2)
    eig_ok = bool(np.all(res.eigenvalues >= 0.0) and np.all(res.eigenvalues < 1.0))

    # rank-0 error-correction model equals the differenced VAR
    vec = vecm_fit(d, 3, 0)
    dvar = var_fit(d.differenced(), 2)
    vecm_ok = True
    for eq in range(2):
        for i, lab in enumerate(vec.fit.column_labels):
            j = dvar.design.column_labels.index(lab.removeprefix("d."))
            vecm_ok &= bool(
                abs(vec.fit.coefficients[i, eq] - dvar.fit.coefficients[j, eq]) <= 1e-10
            )

    # invariance battery
    s = Series("s", 1900, np.cumsum(rng.standard_normal(80)))
    s_aff = Series("s", 1900, 3.7 * s.values - 11.0)
    adf_ok = abs(adf_test(s).statistic - adf_test(s_aff).statistic) <= 1e-8
    kpss_ok = abs(kpss_test(s).statistic - kpss_test(s_aff).statistic) <= 1e-8
    u = rng.standard_normal(100)
    jb_ok = abs(jarque_bera(u).statistic - jarque_bera(-2.5 * u + 4.0).statistic) <= 1e-10
    X = rng.normal(size=(50, 3))
    X_scaled = X * np.array([1.0, 250.0, 0.004])
    v1, v2 = vif(X, ("a", "b", "c")), vif(X_scaled, ("a", "b", "c"))
    vif_ok = all(abs(v1[k] - v2[k]) <= 1e-6 * max(v1[k], 1.0) for k in v1)

    # byte-identical machine-readable reruns
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    render_report(replication.report, out1, "csv")
    render_report(run_pipeline(PipelineConfig(replicate=True)).report, out2, "csv")
    bytes_ok = all(
        (out1 / p.name).read_bytes() == p.read_bytes() for p in sorted(out2.iterdir())
    )

    ok = eig_ok and vecm_ok and adf_ok and kpss_ok and jb_ok and vif_ok and bytes_ok
    report(
        "9 (property suites)",
        ok,
        f"eig={eig_ok}, vecm0={vecm_ok}, adf={adf_ok}, kpss={kpss_ok}, "
        f"jb={jb_ok}, vif={vif_ok}, bytes={bytes_ok}",
    )
    assert ok
