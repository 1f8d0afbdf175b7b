"""Render metric rows as tables and figure-ready documents.

Rendering is pure: the same rows and format always produce the same
bytes. The text format pivots bodies into AW/RW/EP column groups; csv
and json are flat and machine-stable (full float precision, no locale).
"""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping

from .errors import DataError
from .model import Body, MetricsRow, registry_for
from .trends import TrendSeries

CSV_COLUMNS = ("variable", "category", "body", "year", "baseline",
               "pi0", "pib", "aw", "rw", "ep")

_BODY_ORDER = (Body.HOUSE, Body.SENATE, Body.EC)
_BODY_TITLES = {Body.HOUSE: "House", Body.SENATE: "Senate",
                Body.EC: "Electoral College"}

FIGURE_KINDS = ("proportions_fig2", "unit_weights_fig1", "trends_fig3")

# Proportions below this threshold are marked unlabeled in figure data.
LABEL_THRESHOLD = 0.10


def format_weight(value: float | None) -> str:
    if value is None:
        return "--"
    return f"{value:.3f}"


def format_excess(value: float) -> str:
    rounded = int(Decimal(value).quantize(Decimal("1"), rounding=ROUND_HALF_UP))
    return f"{rounded:,}"


def row_to_dict(row: MetricsRow) -> dict:
    return {
        "variable": row.variable,
        "category_code": row.category_code,
        "body": row.body.value,
        "census_year": row.census_year,
        "baseline_variant": row.baseline_variant.value,
        "unit_of_analysis": row.unit_of_analysis.value,
        "pi0": row.pi0,
        "pib": row.pib,
        "absolute_weight": row.absolute_weight,
        "relative_weight": row.relative_weight,
        "excess_population": row.excess_population,
    }


def render_table(rows: list[MetricsRow], format: str = "text") -> bytes:
    if not rows:
        raise DataError("no rows to render")
    if format == "csv":
        return _render_csv(rows)
    if format == "json":
        return _render_json(rows)
    if format == "text":
        return _render_text(rows)
    raise DataError(f"unknown table format {format!r}")


def _render_csv(rows: list[MetricsRow]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            row.variable,
            row.category_code,
            row.body.value,
            row.census_year,
            row.baseline_variant.value,
            repr(row.pi0),
            repr(row.pib),
            "" if row.absolute_weight is None else repr(row.absolute_weight),
            "" if row.relative_weight is None else repr(row.relative_weight),
            repr(row.excess_population),
        ])
    return buf.getvalue().encode("utf-8")


def _render_json(rows: list[MetricsRow]) -> bytes:
    doc = [row_to_dict(r) for r in rows]
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def _render_text(rows: list[MetricsRow]) -> bytes:
    """Category rows with AW, RW, EP column groups per body."""
    bodies = [b for b in _BODY_ORDER if any(r.body is b for r in rows)]
    by_key: dict[tuple[str, str], dict[Body, MetricsRow]] = {}
    order: list[tuple[str, str]] = []
    for row in rows:
        key = (row.variable, row.category_code)
        if key not in by_key:
            by_key[key] = {}
            order.append(key)
        by_key[key][row.body] = row

    header2 = ["Category"]
    for body in bodies:
        header2 += ["AW", "RW", "EP"]

    lines = [header2]
    for variable, code in order:
        any_row = next(iter(by_key[(variable, code)].values()))
        registry = registry_for(variable, harmonized=True)
        try:
            name = registry.display_name(code)
        except DataError:
            name = registry_for(variable, any_row.census_year).display_name(code)
        cells = [name]
        for body in bodies:
            row = by_key[(variable, code)].get(body)
            if row is None:
                cells += ["--", "--", "--"]
            else:
                cells += [format_weight(row.absolute_weight),
                          format_weight(row.relative_weight),
                          format_excess(row.excess_population)]
        lines.append(cells)

    widths = [max(len(line[i]) for line in lines) for i in range(len(lines[0]))]

    # Group header: each body title spans its AW/RW/EP columns.
    group_cells = [" " * widths[0]]
    for i, body in enumerate(bodies):
        span = sum(widths[1 + 3 * i:4 + 3 * i]) + 4
        group_cells.append(_BODY_TITLES[body].ljust(span))
    out = ["  ".join(group_cells).rstrip()]
    for line in lines:
        out.append("  ".join(cell.ljust(w)
                             for cell, w in zip(line, widths)).rstrip())
    return ("\n".join(out) + "\n").encode("utf-8")


def figure_data(kind: str, data, **meta) -> dict:
    """Build a plotting-ready document for one of the known figures."""
    if kind == "proportions_fig2":
        return _proportions_document(data, **meta)
    if kind == "unit_weights_fig1":
        return _unit_weights_document(data, **meta)
    if kind == "trends_fig3":
        return _trends_document(data, **meta)
    raise DataError(f"unknown figure kind {kind!r}")


def _proportions_document(rows: list[MetricsRow], **meta) -> dict:
    if not rows:
        raise DataError("no rows for proportions figure")
    first = rows[0]
    categories: list[str] = []
    for row in rows:
        if row.category_code not in categories:
            categories.append(row.category_code)

    series = [{
        "label": "baseline",
        "points": [
            {"category": code,
             "proportion": _first_row(rows, code).pi0,
             "labeled": _first_row(rows, code).pi0 >= LABEL_THRESHOLD}
            for code in categories
        ],
    }]
    for body in _BODY_ORDER:
        body_rows = {r.category_code: r for r in rows if r.body is body}
        if not body_rows:
            continue
        series.append({
            "label": body.value,
            "points": [
                {"category": code,
                 "proportion": body_rows[code].pib,
                 "labeled": body_rows[code].pib >= LABEL_THRESHOLD}
                for code in categories if code in body_rows
            ],
        })
    return {
        "kind": "proportions_fig2",
        "variable": first.variable,
        "census_year": first.census_year,
        "baseline_variant": first.baseline_variant.value,
        "unit_of_analysis": first.unit_of_analysis.value,
        "value_axis": "proportion",
        "series": series,
        **meta,
    }


def _first_row(rows: list[MetricsRow], code: str) -> MetricsRow:
    for row in rows:
        if row.category_code == code:
            return row
    raise DataError(f"no row for category {code!r}")


def _unit_weights_document(weights_by_body: Mapping[Body, Mapping[str, float]],
                           **meta) -> dict:
    if not weights_by_body:
        raise DataError("no weights for unit figure")
    unit_ids = sorted({u for w in weights_by_body.values() for u in w})
    entries = []
    for unit_id in unit_ids:
        entry = {"unit_id": unit_id, "weights": {}}
        for body, weights in weights_by_body.items():
            if unit_id in weights:
                entry["weights"][body.value] = weights[unit_id]
        entries.append(entry)
    return {
        "kind": "unit_weights_fig1",
        "value_axis": "absolute_weight",
        "entries": entries,
        **meta,
    }


def _trends_document(series: Iterable[TrendSeries], **meta) -> dict:
    series = list(series)
    if not series:
        raise DataError("no series for trends figure")
    assumptions = sorted({note for s in series for note in s.assumptions})
    return {
        "kind": "trends_fig3",
        "variable": series[0].variable,
        "value_axis": "absolute_weight",
        "series": [
            {
                "body": s.body.value,
                "category_code": s.category_code,
                "points": [{"year": y, "absolute_weight": aw}
                           for y, aw in s.points],
                "assumptions": list(s.assumptions),
            }
            for s in series
        ],
        "assumptions": assumptions,
        **meta,
    }
