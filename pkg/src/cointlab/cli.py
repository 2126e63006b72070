"""Command-line front end.

Subcommands run one stage in isolation or the whole pipeline:
``unitroot``, ``breaks``, ``lagselect``, ``johansen``, ``vecm``,
``var``, ``causality``, ``diagnose``, ``pipeline``, ``montecarlo``,
``export-series``.  Exit codes: 0 success, 1 validation error,
2 computation error.

A config file is plain ``key = value`` lines (``#`` comments allowed);
command-line flags override file entries.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import montecarlo
from .errors import ComputationError, ValidationError
from .ingest import bundled_snapshot_path, load_csv
from .pipeline import EQUATION_ROLES, PipelineConfig, run_pipeline
from .report import AnalysisReport, render_report, table_to_markdown

_CONFIG_KEYS = {
    "data", "out", "format", "equations", "det_case", "max_lag",
    "trimming", "level", "seed", "replicate", "vecm_diff_lags",
}


def _parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for i, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValidationError(f"{path}:{i}: expected 'key = value', got {line!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ValidationError(f"{path}:{i}: unknown config key {key!r}")
            values[key] = val.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cointlab",
        description="Cointegration/causality analysis of the bundled annual macro snapshot",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, equations: bool = True) -> None:
        p.add_argument("--data", help="CSV snapshot path (default: bundled)")
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--out", help="output directory; omit to print to stdout")
        p.add_argument("--seed", type=int, help="RNG seed for Monte Carlo work")
        p.add_argument("--level", type=float, help="significance level (default 0.05)")
        p.add_argument("--format", choices=("md", "csv", "json"), help="file format")
        p.add_argument("--replicate", action="store_true",
                       help="pin lag orders and difference-lag counts to replication values")
        p.add_argument("--max-lag", type=int, dest="max_lag")
        p.add_argument("--trimming", type=float)
        p.add_argument("--det-case", dest="det_case", choices=("const", "none"))
        p.add_argument("--vecm-diff-lags", type=int, dest="vecm_diff_lags")
        if equations:
            p.add_argument("--equations", help="comma list from 1,2,3 (default: all)")

    for name in ("pipeline", "unitroot", "breaks", "lagselect", "johansen",
                 "vecm", "var", "causality", "diagnose"):
        common(sub.add_parser(name))

    mc = sub.add_parser("montecarlo", help="size experiments under each test's null")
    mc.add_argument("--experiment", default="all",
                    choices=["all"] + sorted(montecarlo.SIZE_EXPERIMENTS))
    mc.add_argument("--reps", type=int, default=2000)
    mc.add_argument("--t", type=int, default=200)
    mc.add_argument("--seed", type=int, default=0)
    mc.add_argument("--out", help="write a CSV of rejection rates here")

    ex = sub.add_parser("export-series", help="plot-ready CSVs of the snapshot series")
    ex.add_argument("--data")
    ex.add_argument("--vars", default="FD,FID,FMD", help="comma list of roles")
    ex.add_argument("--out", required=True)
    return parser


def _config_from_args(args: argparse.Namespace) -> PipelineConfig:
    file_vals: dict[str, str] = {}
    if getattr(args, "config", None):
        file_vals = _parse_config_file(args.config)

    def pick(key: str, cast, default):
        cli_val = getattr(args, key, None)
        if isinstance(cli_val, bool):
            if cli_val:
                return True
        elif cli_val is not None:
            return cli_val
        if key in file_vals:
            raw = file_vals[key]
            if cast is bool:
                return raw.lower() in ("1", "true", "yes", "on")
            return cast(raw)
        return default

    equations_raw = pick("equations", str, "1,2,3")
    try:
        equations = tuple(int(e) for e in str(equations_raw).split(",") if e != "")
    except ValueError:
        raise ValidationError(f"bad --equations value {equations_raw!r}") from None
    cfg = PipelineConfig(
        data=pick("data", str, None),
        equations=equations,
        det_case=pick("det_case", str, "const"),
        max_lag=pick("max_lag", int, 5),
        trimming=pick("trimming", float, 0.15),
        level=pick("level", float, 0.05),
        out_dir=pick("out", str, None),
        seed=pick("seed", int, 0),
        replicate=pick("replicate", bool, False),
        vecm_diff_lags=pick("vecm_diff_lags", int, None),
    )
    cfg.validate()
    return cfg


_STAGE_PREFIXES = {
    "unitroot": ("unitroot_", "snapshot_validation"),
    "breaks": ("breaks_",),
    "lagselect": ("lagselect_",),
    "johansen": ("johansen_",),
    "vecm": ("vecm_", "beta_"),
    "var": ("var_",),
    "causality": ("causality_",),
    "diagnose": ("diagnostics_",),
}


def _emit(report: AnalysisReport, args: argparse.Namespace, cfg: PipelineConfig) -> None:
    fmt = getattr(args, "format", None) or "md"
    out = cfg.out_dir
    if out:
        render_report(report, out, fmt)
        print(f"wrote {len(report.tables)} table(s) + index.json to {out}")
    else:
        for t in report.tables:
            print(table_to_markdown(t))
        for stage, msg in report.errors:
            print(f"error in {stage}: {msg}", file=sys.stderr)


def _filter_report(report: AnalysisReport, command: str) -> AnalysisReport:
    if command == "pipeline":
        return report
    prefixes = _STAGE_PREFIXES[command]
    keep = tuple(
        t for t in report.tables
        if any(t.table_id.startswith(p) or t.table_id == p for p in prefixes)
    )
    return AnalysisReport(tables=keep, metadata=report.metadata, errors=report.errors)


def _run_montecarlo(args: argparse.Namespace) -> int:
    names = sorted(montecarlo.SIZE_EXPERIMENTS) if args.experiment == "all" else [args.experiment]
    rows = []
    for name in names:
        fn = montecarlo.SIZE_EXPERIMENTS[name]
        res = fn(args.seed, n_reps=args.reps, t=args.t)
        rows.append((name, res.n_reps, res.sample_size, res.rejections, res.rejection_rate))
        print(f"{name:>16}: rejection rate {res.rejection_rate:.4f} "
              f"({res.rejections}/{res.n_reps} at T={res.sample_size}, nominal 0.05)")
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("experiment", "reps", "t", "rejections", "rate"))
            w.writerows(rows)
        print(f"wrote {out}")
    return 0


def _run_export(args: argparse.Namespace) -> int:
    data_path = Path(args.data) if args.data else bundled_snapshot_path()
    d = load_csv(data_path)
    roles = [v.strip() for v in args.vars.split(",") if v.strip()]
    bad = [r for r in roles if r not in d.roles]
    if bad:
        raise ValidationError(f"unknown series role(s) {bad}; have {d.roles}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for role in roles:
        s = d.series(role)
        path = out / f"{role}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("year", role))
            for year, val in zip(s.years, s.values):
                w.writerow((int(year), repr(float(val))))
        print(f"wrote {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "montecarlo":
            return _run_montecarlo(args)
        if args.command == "export-series":
            return _run_export(args)
        cfg = _config_from_args(args)
        result = run_pipeline(cfg)
        report = _filter_report(result.report, args.command)
        _emit(report, args, cfg)
        if args.command == "pipeline":
            for eq, oc in sorted(result.outcomes.items()):
                print(
                    f"equation {eq}: rank {oc.selected_rank} -> {oc.model_kind.upper()} "
                    f"path (lag {oc.lag_order}); breaks at "
                    f"{', '.join(map(str, oc.break_years)) or 'none'}"
                )
        return 0
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
