"""Serialization of extracted tables: JSON, CSV (RFC 4180) and accessible
HTML fragments with proper header scopes for screen readers."""

from __future__ import annotations

import csv
import html
import io
import json
from dataclasses import dataclass

from .bars import ChartTable


@dataclass(frozen=True)
class RenderedTable:
    format: str  # json | csv | html
    text: str

    @property
    def data(self) -> bytes:
        return self.text.encode("utf-8")


def _fmt_num(v: float):
    """Up to 6 significant digits, no trailing zeros; integral -> int."""
    f = float(f"{float(v):.6g}")
    return int(f) if f.is_integer() and abs(f) < 1e15 else f


def to_json(table: ChartTable) -> RenderedTable:
    doc = {
        "x_label": table.x_label,
        "y_label": table.y_label,
        "categories": list(table.categories),
        "series": [
            {
                "name": name,
                "color": list(color),
                "values": [None if v is None else _fmt_num(v) for v in values],
            }
            for name, color, values in table.series
        ],
    }
    return RenderedTable("json", json.dumps(doc, ensure_ascii=False) + "\n")


def from_json(text: str) -> ChartTable:
    """Inverse of to_json (up to float formatting)."""
    doc = json.loads(text)
    return ChartTable(
        x_label=doc["x_label"],
        y_label=doc["y_label"],
        categories=tuple(doc["categories"]),
        series=tuple(
            (s["name"], tuple(s["color"]),
             tuple(None if v is None else float(v) for v in s["values"]))
            for s in doc["series"]
        ),
    )


def to_csv(table: ChartTable) -> RenderedTable:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([table.x_label or "category"]
                    + [name for name, _, _ in table.series])
    for i, cat in enumerate(table.categories):
        row = [cat]
        for _, _, values in table.series:
            v = values[i]
            row.append("" if v is None else str(_fmt_num(v)))
        writer.writerow(row)
    return RenderedTable("csv", buf.getvalue())


def to_html(table: ChartTable, caption: str = "") -> RenderedTable:
    """HTML5 table fragment: caption, column headers with scope="col",
    one row-header cell per category with scope="row"."""
    esc = html.escape
    lines = ["<table>"]
    if caption:
        lines.append(f"  <caption>{esc(caption)}</caption>")
    lines.append("  <thead>")
    head = [f'<th scope="col">{esc(table.x_label or "category")}</th>']
    head += [f'<th scope="col">{esc(name)}</th>' for name, _, _ in table.series]
    lines.append("    <tr>" + "".join(head) + "</tr>")
    lines.append("  </thead>")
    lines.append("  <tbody>")
    for i, cat in enumerate(table.categories):
        cells = [f'<th scope="row">{esc(cat)}</th>']
        for _, _, values in table.series:
            v = values[i]
            if v is None:
                cells.append('<td aria-label="no data">—</td>')
            else:
                cells.append(f"<td>{_fmt_num(v)}</td>")
        lines.append("    <tr>" + "".join(cells) + "</tr>")
    lines.append("  </tbody>")
    lines.append("</table>")
    return RenderedTable("html", "\n".join(lines) + "\n")


def render(table: ChartTable, fmt: str, caption: str = "") -> RenderedTable:
    if fmt == "json":
        return to_json(table)
    if fmt == "csv":
        return to_csv(table)
    if fmt == "html":
        return to_html(table, caption)
    raise ValueError(f"unknown format {fmt!r}")
