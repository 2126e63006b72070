"""Loading and sanity-checking the annual macro CSV snapshot.

Expected layout: optional ``#`` comment lines, then a header row
``year,TRADE,FD,FID,FMD,GDPPC,REER`` and one row per consecutive year.
GDP per capita is stored raw and logged at load time so the LGDP
series' provenance stays auditable.
"""

from __future__ import annotations

import csv
import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ContinuityError, ParseError, SchemaError
from .series import Dataset, Series, natural_log

REQUIRED_COLUMNS = ("year", "TRADE", "FD", "FID", "FMD", "GDPPC", "REER")


@dataclass(frozen=True)
class DataSchema:
    """Input column contract and optional sample clip."""

    columns: tuple[str, ...] = REQUIRED_COLUMNS
    sample: tuple[int, int] | None = None  # inclusive clip applied after load


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    observed: str
    expected: str


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ValidationCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def bundled_snapshot_path() -> Path:
    """Location of the frozen India 1980-2019 snapshot shipped in the package."""
    return Path(
        importlib.resources.files("cointlab").joinpath("data/india_1980_2019.csv")
    )


def load_csv(path: str | Path, schema: DataSchema | None = None) -> Dataset:
    """Read the snapshot into an aligned Dataset with LGDP precomputed.

    Raises :class:`SchemaError` for missing columns,
    :class:`ContinuityError` for year gaps, and :class:`ParseError` for
    non-numeric cells, each naming the offending location.
    """
    schema = schema or DataSchema()
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    if not rows:
        raise SchemaError(f"{path}: no header row found")
    header = [c.strip() for c in rows[0]]
    missing = [c for c in schema.columns if c not in header]
    if missing:
        raise SchemaError(f"{path}: missing required column(s) {missing}")
    col_of = {c: header.index(c) for c in schema.columns}

    years: list[int] = []
    data: dict[str, list[float]] = {c: [] for c in schema.columns if c != "year"}
    for i, row in enumerate(rows[1:], start=2):
        try:
            year = int(float(row[col_of["year"]]))
        except (ValueError, IndexError):
            raise ParseError(f"{path}: row {i}, column 'year': {row[col_of['year']]!r}") from None
        if years and year != years[-1] + 1:
            raise ContinuityError(
                f"{path}: year sequence breaks at row {i}: {years[-1]} -> {year}"
            )
        years.append(year)
        for c in data:
            cell = row[col_of[c]].strip() if col_of[c] < len(row) else ""
            try:
                data[c].append(float(cell))
            except ValueError:
                raise ParseError(f"{path}: row {i}, column {c!r}: {cell!r}") from None
    if not years:
        raise SchemaError(f"{path}: no data rows")

    start = years[0]
    series = {c: Series(c, start, vals) for c, vals in data.items()}
    lgdp = Series("LGDP", start, natural_log(series["GDPPC"]).values)
    ordered = (
        ("TRADE", series["TRADE"]),
        ("FD", series["FD"]),
        ("FID", series["FID"]),
        ("FMD", series["FMD"]),
        ("LGDP", lgdp),
        ("REER", series["REER"]),
    )
    d = Dataset(ordered, (start, years[-1]))
    if schema.sample is not None:
        lo = max(schema.sample[0], start)
        hi = min(schema.sample[1], years[-1])
        d = Dataset(tuple((r, s.window(lo, hi)) for r, s in d.variables), (lo, hi))
    return d


def write_csv(d: Dataset, path: str | Path, header_comment: str | None = None) -> None:
    """Serialize a Dataset back to the snapshot layout at full precision."""
    import math

    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header_comment:
            for line in header_comment.splitlines():
                fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(REQUIRED_COLUMNS)
        gdppc = [math.exp(v) for v in d.series("LGDP").values]
        for i, year in enumerate(range(d.start_year, d.end_year + 1)):
            writer.writerow(
                [
                    year,
                    repr(float(d.series("TRADE").values[i])),
                    repr(float(d.series("FD").values[i])),
                    repr(float(d.series("FID").values[i])),
                    repr(float(d.series("FMD").values[i])),
                    repr(float(gdppc[i])),
                    repr(float(d.series("REER").values[i])),
                ]
            )


def snapshot_validate(d: Dataset) -> ValidationReport:
    """Anchor-value and range checks on a loaded snapshot (report only)."""
    checks: list[ValidationCheck] = []

    def check(name: str, passed: bool, observed: str, expected: str) -> None:
        checks.append(ValidationCheck(name, passed, observed, expected))

    trade = d.series("TRADE")
    if d.start_year <= 1980 <= d.end_year:
        v = trade.value_in(1980)
        check("TRADE 1980 anchor", abs(v - 15.4) <= 0.5, f"{v:.3f}", "15.4 +/- 0.5")
    else:
        check("TRADE 1980 anchor", False, "year 1980 not in sample", "sample covers 1980")
    if d.start_year <= 2019 <= d.end_year:
        v = trade.value_in(2019)
        check("TRADE 2019 anchor", abs(v - 40.01) <= 0.5, f"{v:.3f}", "40.01 +/- 0.5")
    else:
        check("TRADE 2019 anchor", False, "year 2019 not in sample", "sample covers 2019")

    for role in ("FD", "FID", "FMD"):
        vals = d.series(role).values
        ok = bool(vals.min() >= 0.0 and vals.max() <= 1.0)
        check(f"{role} within unit interval", ok, f"[{vals.min():.3f}, {vals.max():.3f}]", "[0, 1]")

    check(
        "positive trade share",
        bool(trade.values.min() > 0.0),
        f"min {trade.values.min():.3f}",
        "> 0",
    )
    reer = d.series("REER").values
    check("REER positive index", bool(reer.min() > 0.0), f"min {reer.min():.3f}", "> 0")
    return ValidationReport(tuple(checks))
