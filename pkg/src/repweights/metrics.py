"""Representation metrics over a dataset, a body allocation, and a baseline.

For a demographic category, the represented share in a body is the
vote-share-weighted average of unit-level category shares:

    represented = sum_u share_u * votes_u / sum_u votes_u

The baseline share is the category's share of the whole included
population. Absolute weight divides represented by baseline share
(values above one mean overrepresentation), relative weight rescales a
category's absolute weight by the variable's referent category, and
excess population converts the share gap into people:

    excess = baseline_total * (represented - baseline)

so a category with absolute weight above one carries a positive excess,
and excesses across a variable's categories sum to zero. Counts stay
exact integers throughout; only the final divisions are floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import apportion
from .errors import MetricsError
from .model import (
    BaselineVariant,
    Body,
    BodyAllocation,
    CategoryRegistry,
    Dataset,
    DemographicTable,
    GeoUnit,
    MetricsRow,
    Scenario,
    UnitKind,
    registry_for,
)


@dataclass(frozen=True)
class BaselinePopulation:
    """Category totals over the baseline's included units."""

    baseline_variant: BaselineVariant
    variable: str
    census_year: int
    totals: Mapping[str, int]
    grand_total: int


def unit_counts(dataset: Dataset, table: DemographicTable,
                unit: GeoUnit) -> Mapping[str, int]:
    """Category counts for a unit, summing over its districts when the
    table has no row for the unit itself."""
    if table.has_unit(unit.unit_id):
        return table.counts[unit.unit_id]
    if unit.unit_kind is UnitKind.STATE:
        districts = dataset.districts_of(table.census_year, unit.state_code)
        rows = [table.counts[d.unit_id] for d in districts
                if table.has_unit(d.unit_id)]
        if rows:
            summed: dict[str, int] = {}
            for row in rows:
                for code, count in row.items():
                    summed[code] = summed.get(code, 0) + count
            return summed
    raise MetricsError(
        f"unit {unit.unit_id!r} has no {table.variable} counts for "
        f"{table.census_year}")


def baseline_population(dataset: Dataset, variable: str, census_year: int,
                        variant: BaselineVariant = BaselineVariant.WITH_DC,
                        table: DemographicTable | None = None,
                        ) -> BaselinePopulation:
    table = table if table is not None else dataset.table(variable, census_year)
    totals: dict[str, int] = {}
    grand_total = 0
    for unit in apportion.baseline_geo_units(dataset, census_year, variant):
        counts = unit_counts(dataset, table, unit)
        for code, count in counts.items():
            totals[code] = totals.get(code, 0) + count
        grand_total += sum(counts.values())
    return BaselinePopulation(
        baseline_variant=variant, variable=variable, census_year=census_year,
        totals=totals, grand_total=grand_total)


def represented_proportion(dataset: Dataset, table: DemographicTable,
                           category_code: str,
                           allocation: BodyAllocation) -> float:
    """Vote-weighted average of unit-level category shares for a body."""
    weighted = 0.0
    total_votes = allocation.total_votes
    if total_votes <= 0:
        raise MetricsError(f"allocation for {allocation.body.value} has no votes")
    for unit_id, votes in allocation.votes.items():
        source = dataset.unit(allocation.census_year,
                              allocation.source_of(unit_id))
        counts = unit_counts(dataset, table, source)
        denom = sum(counts.values())
        if denom <= 0:
            raise MetricsError(
                f"unit {source.unit_id!r} has an empty {table.variable} total")
        weighted += votes * (counts.get(category_code, 0) / denom)
    return weighted / total_votes


def baseline_proportion(baseline: BaselinePopulation, category_code: str) -> float:
    if baseline.grand_total <= 0:
        raise MetricsError("baseline grand total is zero")
    return baseline.totals.get(category_code, 0) / baseline.grand_total


def absolute_weight(pib: float, pi0: float) -> float:
    if pi0 <= 0:
        raise MetricsError("absolute weight undefined: baseline share is zero")
    return pib / pi0


def relative_weight(weights: Mapping[str, float | None],
                    registry: CategoryRegistry) -> dict[str, float | None]:
    """Each category's absolute weight over the referent's.

    The referent maps to exactly 1.0; categories with undefined absolute
    weight stay undefined.
    """
    referent_aw = weights.get(registry.referent)
    if referent_aw is None or referent_aw <= 0:
        raise MetricsError(
            f"referent category {registry.referent!r} has undefined or zero "
            f"absolute weight")
    out: dict[str, float | None] = {}
    for code, aw in weights.items():
        if code == registry.referent:
            out[code] = 1.0
        elif aw is None:
            out[code] = None
        else:
            out[code] = aw / referent_aw
    return out


def excess_population(pib: float, pi0: float, grand_total: int) -> float:
    return grand_total * (pib - pi0)


def compute_metrics(dataset: Dataset, variable: str, body: Body,
                    census_year: int, scenario: Scenario | None = None,
                    *, allocation: BodyAllocation | None = None,
                    table: DemographicTable | None = None) -> list[MetricsRow]:
    """All four metrics for every category of a variable, one body.

    Rows follow registry order. A category absent from the baseline
    (zero share) keeps its row with null weights and an excess equal to
    its full represented population.
    """
    scenario = scenario or Scenario()
    table = table if table is not None else dataset.table(variable, census_year)
    registry = registry_for(variable, census_year, harmonized=table.harmonized)
    if allocation is None:
        allocation = apportion.build_allocation(dataset, body, census_year,
                                                scenario)
    baseline = baseline_population(dataset, variable, census_year,
                                   scenario.baseline_variant, table=table)

    pib: dict[str, float] = {}
    pi0: dict[str, float] = {}
    aw: dict[str, float | None] = {}
    for code in registry.codes():
        pib[code] = represented_proportion(dataset, table, code, allocation)
        pi0[code] = baseline_proportion(baseline, code)
        aw[code] = absolute_weight(pib[code], pi0[code]) if pi0[code] > 0 else None
    rw = relative_weight(aw, registry)

    rows = []
    for code in registry.codes():
        rows.append(MetricsRow(
            variable=variable,
            category_code=code,
            body=body,
            census_year=census_year,
            baseline_variant=scenario.baseline_variant,
            unit_of_analysis=table.unit_of_analysis,
            pi0=pi0[code],
            pib=pib[code],
            absolute_weight=aw[code],
            relative_weight=rw[code],
            excess_population=excess_population(pib[code], pi0[code],
                                                baseline.grand_total),
        ))
    return rows
