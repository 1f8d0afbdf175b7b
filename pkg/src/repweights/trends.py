"""Multi-year absolute-weight series over harmonized categories.

Each requested year is harmonized to the stable trend category set,
run through the standard metrics path, and stitched into one series per
(body, category). Years absent from the dataset are left out rather
than interpolated, so a point exists only where a census was loaded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import apportion, metrics
from .errors import DataError
from .ingest import harmonize, trend_map_for
from .model import Body, Dataset, Scenario, registry_for

BODIES = (Body.HOUSE, Body.SENATE, Body.EC)


@dataclass(frozen=True)
class TrendSeries:
    variable: str
    body: Body
    category_code: str
    points: tuple[tuple[int, float | None], ...]
    assumptions: tuple[str, ...] = ()


def compute_trends(dataset: Dataset, years: Iterable[int], variable: str,
                   scenario: Scenario | None = None) -> list[TrendSeries]:
    """Per-category absolute-weight series across the requested years."""
    scenario = scenario or Scenario()
    trend_map = trend_map_for(variable)
    registry = registry_for(variable, harmonized=True)

    requested = sorted(set(years))
    available = [y for y in requested if dataset.has_table(variable, y)]
    if not available:
        raise DataError(
            f"no {variable!r} table for any requested year {requested}")

    points: dict[tuple[Body, str], list[tuple[int, float | None]]] = {}
    assumptions: dict[Body, set[str]] = {b: set() for b in BODIES}
    for year in available:
        table = harmonize(dataset.table(variable, year), trend_map)
        for body in BODIES:
            allocation = apportion.build_allocation(dataset, body, year,
                                                    scenario)
            assumptions[body].update(allocation.assumptions)
            rows = metrics.compute_metrics(
                dataset, variable, body, year, scenario,
                allocation=allocation, table=table)
            for row in rows:
                points.setdefault((body, row.category_code), []).append(
                    (year, row.absolute_weight))

    series = []
    for body in BODIES:
        for code in registry.codes():
            pts = points.get((body, code), [])
            series.append(TrendSeries(
                variable=variable,
                body=body,
                category_code=code,
                points=tuple(pts),
                assumptions=tuple(sorted(assumptions[body])),
            ))
    return series
