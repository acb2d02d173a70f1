"""Distribution tables and output rendering (JSON, CSV, text table)."""

from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .catalog import pattern_names
from .constraints import CONSTRAINT_TYPES

SCHEMA_VERSION = "1"
FORMATS = ("json", "csv", "table")
AXES = ("pattern", "constraint-type")


@dataclass
class DistributionTable:
    axis: str
    rows: list[str] = field(default_factory=list)
    columns: list[str] = field(default_factory=list)
    cells: dict[tuple[str, str], int] = field(default_factory=dict)

    def cell(self, row: str, column: str) -> int:
        return self.cells.get((row, column), 0)

    def row_total(self, row: str) -> int:
        return sum(self.cell(row, c) for c in self.columns)

    def column_total(self, column: str) -> int:
        return sum(self.cell(r, column) for r in self.rows)

    @property
    def total(self) -> int:
        return sum(self.cells.values())

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "axis": self.axis,
            "columns": list(self.columns),
            "rows": [
                {"name": r, "counts": {c: self.cell(r, c) for c in self.columns}, "total": self.row_total(r)}
                for r in self.rows
            ],
            "totals": {c: self.column_total(c) for c in self.columns},
            "total": self.total,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([self.axis, *self.columns, "total"])
        for r in self.rows:
            w.writerow([r, *(self.cell(r, c) for c in self.columns), self.row_total(r)])
        w.writerow(["total", *(self.column_total(c) for c in self.columns), self.total])
        return buf.getvalue()

    def to_table(self, color: bool | None = None) -> str:
        header = [self.axis, *self.columns, "total"]
        body = [[r, *(str(self.cell(r, c)) for c in self.columns), str(self.row_total(r))] for r in self.rows]
        footer = ["total", *(str(self.column_total(c)) for c in self.columns), str(self.total)]
        return render_table(header, body + [footer], color=color)


def _row_order(axis: str) -> list[str]:
    if axis == "pattern":
        return pattern_names()
    if axis == "constraint-type":
        return list(CONSTRAINT_TYPES)
    raise ValueError(f"unknown axis {axis!r}; expected one of {', '.join(AXES)}")


def report_distribution(items: Iterable[tuple[str, str]], axis: str) -> DistributionTable:
    """Count (row label, system) pairs into a table; rows keep catalog or type order."""
    order = _row_order(axis)
    counts = Counter(items)
    unknown = sorted({r for r, _ in counts if r not in order})
    if unknown:
        raise ValueError(f"unknown {axis} values: {', '.join(unknown)}")
    present = {r for r, _ in counts}
    rows = [r for r in order if r in present]
    columns = sorted({s for _, s in counts})
    return DistributionTable(axis, rows, columns, dict(counts))


def use_color() -> bool:
    return not os.environ.get("CIPSCAN_NO_COLOR")


def render_table(header: list[str], rows: list[list[str]], color: bool | None = None) -> str:
    if color is None:
        color = use_color()
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]

    def fmt(cells: list[str]) -> str:
        return "  ".join(
            str(c).ljust(w) if i == 0 else str(c).rjust(w) for i, (c, w) in enumerate(zip(cells, widths))
        ).rstrip()

    head = fmt(header)
    if color:
        head = f"\x1b[1m{head}\x1b[0m"
    lines = [head, "  ".join("-" * w for w in widths)]
    lines.extend(fmt(r) for r in rows)
    return "\n".join(lines) + "\n"


def dump_json(payload) -> str:
    """Deterministic JSON with a schema version stamped on object payloads."""
    if isinstance(payload, dict) and "schema_version" not in payload:
        payload = {"schema_version": SCHEMA_VERSION, **payload}
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def dump_csv(header: list[str], rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(list(r))
    return buf.getvalue()
