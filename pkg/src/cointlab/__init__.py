"""Cointegration and causality toolkit for small annual macro systems."""

from .series import Dataset, Series, align, diff, natural_log
from .regression import (
    DesignMatrix,
    SystemFit,
    TestResult,
    lag_matrix,
    newey_west_lrv,
    ols_fit,
    system_ols,
    wald_block_test,
)
from .unitroot import IntegrationDecision, UnitRootResult, adf_test, integration_order, kpss_test, perron_test
from .breaks import BreakModel, BreakResult, global_breaks, sequential_breaks, supf_test
from .var import LagSelectionTable, VarFit, lag_order_select, stability, var_fit, var_granger
from .coint import JohansenResult, VecmFit, cointegrating_vectors, johansen_test, vecm_fit, vecm_granger
from .diagnostics import breusch_godfrey, jarque_bera, jarque_bera_joint, ramsey_reset, vif, white_test
from .ingest import DataSchema, bundled_snapshot_path, load_csv, snapshot_validate
from .pipeline import PipelineConfig, run_pipeline
from .report import AnalysisReport, Table, render_report

__version__ = "0.1.0"
