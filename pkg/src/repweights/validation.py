"""Dataset invariant checking.

Violations are collected into a report rather than raised, so a broken
extract can be inspected in full. District-sum mismatches against state
totals are downgraded to warnings: disclosure-avoidance noise in source
files can produce them without invalidating the analysis.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import DataError
from .model import (
    CENSUS_YEARS,
    Dataset,
    DemographicTable,
    GeoUnit,
    UnitKind,
    UnitOfAnalysis,
    registry_for,
    unit_of_analysis_for,
)

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"


@dataclass(frozen=True, order=True)
class ValidationIssue:
    severity: str
    code: str
    message: str
    census_year: int | None = None
    variable: str | None = None
    unit_id: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.errors

    @property
    def errors(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity == SEVERITY_ERROR)

    @property
    def warnings(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity == SEVERITY_WARNING)

    def summary(self) -> str:
        if not self.issues:
            return "dataset valid: no issues"
        lines = [f"{i.severity}: {i.message}" for i in self.issues]
        lines.append(f"{len(self.errors)} error(s), {len(self.warnings)} warning(s)")
        return "\n".join(lines)


def validate_dataset(units: list[GeoUnit] | tuple[GeoUnit, ...],
                     tables: list[DemographicTable] | tuple[DemographicTable, ...],
                     ) -> ValidationReport:
    """Check every dataset invariant and report all violations found.

    The result is order-insensitive: permuting the input lists yields the
    same set of issues. Inputs are never mutated.
    """
    issues: set[ValidationIssue] = set()

    key_counts = Counter((u.census_year, u.unit_id) for u in units)
    dup_keys = {key for key, n in key_counts.items() if n > 1}
    for (year, unit_id) in dup_keys:
        issues.add(ValidationIssue(
            SEVERITY_ERROR, "duplicate_unit_id",
            f"duplicate unit id {unit_id!r} in year {year} "
            f"({key_counts[(year, unit_id)]} occurrences)",
            census_year=year, unit_id=unit_id))

    # Units with duplicated ids have ambiguous totals; total-consistency
    # checks skip them (the duplicate error already covers the defect).
    by_key = {
        (u.census_year, u.unit_id): u for u in units
        if (u.census_year, u.unit_id) not in dup_keys
    }
    state_by_code = {
        (u.census_year, u.state_code): u
        for u in units
        if u.unit_kind is UnitKind.STATE
        and (u.census_year, u.unit_id) not in dup_keys
    }
    state_codes_present = {
        (u.census_year, u.state_code)
        for u in units if u.unit_kind is UnitKind.STATE
    }

    for u in units:
        if u.census_year not in CENSUS_YEARS:
            issues.add(ValidationIssue(
                SEVERITY_ERROR, "bad_census_year",
                f"unit {u.unit_id!r} has unsupported census year {u.census_year}",
                census_year=u.census_year, unit_id=u.unit_id))
        if u.total_population < 0:
            issues.add(ValidationIssue(
                SEVERITY_ERROR, "negative_population",
                f"unit {u.unit_id!r} has negative total_population",
                census_year=u.census_year, unit_id=u.unit_id))
        if u.total_households is not None and u.total_households < 0:
            issues.add(ValidationIssue(
                SEVERITY_ERROR, "negative_households",
                f"unit {u.unit_id!r} has negative total_households",
                census_year=u.census_year, unit_id=u.unit_id))
        if u.unit_kind is UnitKind.DISTRICT:
            if (u.census_year, u.state_code) not in state_codes_present:
                issues.add(ValidationIssue(
                    SEVERITY_ERROR, "orphan_district",
                    f"district {u.unit_id!r} references missing state "
                    f"{u.state_code!r} in year {u.census_year}",
                    census_year=u.census_year, unit_id=u.unit_id))
            if not _district_id_ok(u):
                issues.add(ValidationIssue(
                    SEVERITY_WARNING, "district_id_format",
                    f"district id {u.unit_id!r} does not follow "
                    f"'{u.state_code}-NN'",
                    census_year=u.census_year, unit_id=u.unit_id))

    # District populations should sum to the state's total. Mismatch is
    # reported but not fatal.
    district_pop: dict[tuple[int, str], int] = {}
    for u in units:
        if u.unit_kind is UnitKind.DISTRICT:
            key = (u.census_year, u.state_code)
            district_pop[key] = district_pop.get(key, 0) + u.total_population
    for (year, code), total in sorted(district_pop.items()):
        state = state_by_code.get((year, code))
        if state is not None and state.total_population != total:
            issues.add(ValidationIssue(
                SEVERITY_WARNING, "district_sum_mismatch",
                f"districts of {code} sum to {total}, state total is "
                f"{state.total_population} (year {year})",
                census_year=year, unit_id=state.unit_id))

    for t in tables:
        issues.update(_check_table(t, by_key, dup_keys))

    return ValidationReport(tuple(sorted(issues)))


def _district_id_ok(u: GeoUnit) -> bool:
    prefix = u.state_code + "-"
    return (u.unit_id.startswith(prefix)
            and len(u.unit_id) == len(prefix) + 2
            and u.unit_id[len(prefix):].isdigit())


def _check_table(t: DemographicTable,
                 by_key: dict[tuple[int, str], GeoUnit],
                 dup_keys: set[tuple[int, str]]) -> set[ValidationIssue]:
    issues: set[ValidationIssue] = set()

    expected_uoa = unit_of_analysis_for(t.variable) if _known_variable(t) else None
    if expected_uoa is not None and t.unit_of_analysis is not expected_uoa:
        issues.add(ValidationIssue(
            SEVERITY_ERROR, "wrong_unit_of_analysis",
            f"{t.variable} table for {t.census_year} declares "
            f"{t.unit_of_analysis.value}, expected {expected_uoa.value}",
            census_year=t.census_year, variable=t.variable))

    registered: frozenset[str] | None = None
    if _known_variable(t):
        try:
            reg = registry_for(t.variable, t.census_year, harmonized=t.harmonized)
            registered = frozenset(reg.codes())
        except DataError:
            issues.add(ValidationIssue(
                SEVERITY_ERROR, "bad_census_year",
                f"{t.variable} table has unsupported census year {t.census_year}",
                census_year=t.census_year, variable=t.variable))
    else:
        issues.add(ValidationIssue(
            SEVERITY_ERROR, "unknown_variable",
            f"table declares unknown variable {t.variable!r}",
            census_year=t.census_year, variable=t.variable))

    for unit_id in sorted(t.counts):
        per_unit = t.counts[unit_id]
        ambiguous = (t.census_year, unit_id) in dup_keys
        unit = by_key.get((t.census_year, unit_id))
        if unit is None and not ambiguous:
            issues.add(ValidationIssue(
                SEVERITY_ERROR, "unknown_unit",
                f"{t.variable} table references missing unit {unit_id!r} "
                f"(year {t.census_year})",
                census_year=t.census_year, variable=t.variable, unit_id=unit_id))
            continue
        for code, count in per_unit.items():
            if count < 0:
                issues.add(ValidationIssue(
                    SEVERITY_ERROR, "negative_count",
                    f"negative count for {code!r} in unit {unit_id!r} "
                    f"({t.variable}, {t.census_year})",
                    census_year=t.census_year, variable=t.variable,
                    unit_id=unit_id))
            if registered is not None and code not in registered:
                issues.add(ValidationIssue(
                    SEVERITY_ERROR, "unknown_category",
                    f"category {code!r} not registered for {t.variable} "
                    f"in {t.census_year}",
                    census_year=t.census_year, variable=t.variable,
                    unit_id=unit_id))

        if ambiguous:
            continue
        total = sum(per_unit.values())
        if t.unit_of_analysis is UnitOfAnalysis.HOUSEHOLDS:
            declared = unit.total_households
            if declared is None:
                issues.add(ValidationIssue(
                    SEVERITY_ERROR, "missing_household_total",
                    f"unit {unit_id!r} lacks total_households but appears in "
                    f"the {t.variable} table ({t.census_year})",
                    census_year=t.census_year, variable=t.variable,
                    unit_id=unit_id))
                continue
        else:
            declared = unit.total_population
        if total != declared:
            issues.add(ValidationIssue(
                SEVERITY_ERROR, "category_sum_mismatch",
                f"{t.variable} counts for unit {unit_id!r} sum to {total}, "
                f"unit total is {declared} ({t.census_year})",
                census_year=t.census_year, variable=t.variable,
                unit_id=unit_id))

    return issues


def _known_variable(t: DemographicTable) -> bool:
    from .model import VARIABLES

    return t.variable in VARIABLES
