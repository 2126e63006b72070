"""Result tables and deterministic rendering to markdown, CSV, or JSON.

A rendered run is one file per table plus ``index.json`` describing
every table (id, kind, equation, file).  CSV and JSON cells keep full
``repr`` precision; markdown rounds for reading.  Rendering the same
report twice produces byte-identical output, and reloading a rendered
CSV table and rendering it again reproduces the file exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParameterError

Cell = str | int | float


@dataclass(frozen=True)
class Table:
    table_id: str
    kind: str
    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]
    equation: int | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ParameterError(
                    f"table {self.table_id}: row width {len(r)} != {len(self.columns)} columns"
                )


def _cell_full(x: Cell) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _cell_round(x: Cell, digits: int = 4) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, int):
        return str(x)
    v = float(x)
    if v != v:
        return "nan"
    if v == 0:
        return "0"
    if abs(v) >= 1e6 or abs(v) < 1e-4:
        return f"{v:.4e}"
    return f"{v:.{digits}f}"


def table_to_markdown(t: Table) -> str:
    out = [f"## {t.title}", ""]
    out.append("| " + " | ".join(t.columns) + " |")
    out.append("|" + "|".join("---" for _ in t.columns) + "|")
    for r in t.rows:
        out.append("| " + " | ".join(_cell_round(c) for c in r) + " |")
    for n in t.notes:
        out.append("")
        out.append(f"*{n}*")
    out.append("")
    return "\n".join(out)


def table_to_csv(t: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(t.columns)
    for r in t.rows:
        w.writerow([_cell_full(c) for c in r])
    return buf.getvalue()


def table_to_json(t: Table) -> str:
    def cell(x: Cell):
        if isinstance(x, float):
            if x != x:
                return None  # strict JSON has no NaN
            if x in (float("inf"), float("-inf")):
                return repr(x)
        return x

    payload = {
        "id": t.table_id,
        "kind": t.kind,
        "title": t.title,
        "equation": t.equation,
        "columns": list(t.columns),
        "rows": [[cell(c) for c in r] for r in t.rows],
        "notes": list(t.notes),
    }
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def load_table_csv(path: str | Path, table_id: str, kind: str = "", title: str = "",
                   equation: int | None = None) -> Table:
    """Read a rendered CSV table back; cells stay strings so rendering
    the result reproduces the file byte for byte."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParameterError(f"{path}: empty table")
    return Table(
        table_id=table_id,
        kind=kind,
        title=title or table_id,
        columns=tuple(rows[0]),
        rows=tuple(tuple(r) for r in rows[1:]),
        equation=equation,
    )


@dataclass(frozen=True)
class AnalysisReport:
    tables: tuple[Table, ...]
    metadata: dict[str, str] = field(default_factory=dict)
    errors: tuple[tuple[str, str], ...] = ()  # (stage, message)

    def table(self, table_id: str) -> Table:
        for t in self.tables:
            if t.table_id == table_id:
                return t
        raise ParameterError(f"no table {table_id!r} in report")

    def table_ids(self) -> tuple[str, ...]:
        return tuple(t.table_id for t in self.tables)


def render_report(report: AnalysisReport, out_dir: str | Path, fmt: str = "markdown") -> list[Path]:
    """Write one file per table plus index.json; returns written paths."""
    if fmt not in ("markdown", "md", "csv", "json"):
        raise ParameterError(f"unknown format {fmt!r}")
    fmt = "markdown" if fmt == "md" else fmt
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise OSError(f"output directory {out} is not writable: {exc}") from exc

    ext = {"markdown": "md", "csv": "csv", "json": "json"}[fmt]
    renderer = {
        "markdown": table_to_markdown,
        "csv": table_to_csv,
        "json": table_to_json,
    }[fmt]

    written: list[Path] = []
    index = {
        "format": fmt,
        "metadata": dict(sorted(report.metadata.items())),
        "errors": [{"stage": s, "message": m} for s, m in report.errors],
        "tables": [],
    }
    for t in report.tables:
        fname = f"{t.table_id}.{ext}"
        (out / fname).write_text(renderer(t), encoding="utf-8")
        written.append(out / fname)
        index["tables"].append(
            {
                "id": t.table_id,
                "kind": t.kind,
                "title": t.title,
                "equation": t.equation,
                "file": fname,
            }
        )
    index_path = out / "index.json"
    index_path.write_text(json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(index_path)
    return written
