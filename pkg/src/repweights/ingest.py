"""Extract parsing, serialization, and category harmonization.

Extract files are UTF-8, comma-delimited, RFC 4180-quoted, with the
mandatory header::

    unit_id,unit_kind,state_code,census_year,variable,category_code,count

One file may mix variables and years; rows group into one table per
(variable, census_year). Unit totals come from optional ``total`` rows
(category ``population`` or ``households``); when absent they are
derived by summing the race/ethnicity table, falling back to the first
population-level variable present. States that appear only through
their districts get synthesized state-level units and table rows (sums
over districts), so state-level queries work on district-level pulls.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterable, Mapping

from .errors import DataError, ExtractRowError, ExtractSchemaError, HarmonizationError
from .model import (
    CENSUS_YEARS,
    Dataset,
    DemographicTable,
    GeoUnit,
    UnitKind,
    VARIABLES,
    registry_for,
    unit_of_analysis_for,
)

EXTRACT_COLUMNS = (
    "unit_id",
    "unit_kind",
    "state_code",
    "census_year",
    "variable",
    "category_code",
    "count",
)

TOTAL_VARIABLE = "total"
TOTAL_CATEGORIES = ("population", "households")

# Population total falls back to these tables, in order, when no
# explicit total row exists.
_POPULATION_PRIORITY = ("race_ethnicity", "age_category", "sex", "rural_urban")



def _row_error(message: str, line: int) -> ExtractRowError:
    return ExtractRowError(f"line {line}: {message}", line)

@dataclass(frozen=True)
class _Row:
    line: int
    unit_id: str
    unit_kind: UnitKind
    state_code: str
    census_year: int
    variable: str
    category_code: str
    count: int


def parse_extract(stream: BinaryIO) -> tuple[list[GeoUnit], list[DemographicTable]]:
    """Parse one extract stream into an unvalidated dataset."""
    rows = _read_rows(stream)
    return _assemble(rows)


def load_dataset(paths: Iterable[str | Path]) -> Dataset:
    """Parse several extract files into one combined dataset.

    Rows from all files are pooled before units and totals are derived,
    so a dataset split across files (one variable per file, say) behaves
    exactly like a single concatenated extract.
    """
    rows: list[_Row] = []
    for path in paths:
        path = Path(path)
        try:
            with open(path, "rb") as fh:
                rows.extend(_read_rows(fh))
        except (ExtractSchemaError, ExtractRowError) as exc:
            raise type(exc)(f"{path.name}: {exc}", *_extra_args(exc)) from None
    units, tables = _assemble(rows)
    return Dataset(units, tables)


def _extra_args(exc: Exception):
    if isinstance(exc, ExtractSchemaError):
        return (exc.column_index,)
    if isinstance(exc, ExtractRowError):
        return (exc.line_number,)
    return ()


def _read_rows(stream: BinaryIO) -> list[_Row]:
    text = io.TextIOWrapper(stream, encoding="utf-8", newline="")
    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise ExtractSchemaError("empty extract: missing header row") from None

    for i, (got, want) in enumerate(zip(header, EXTRACT_COLUMNS), start=1):
        if got != want:
            raise ExtractSchemaError(
                f"header column {i} is {got!r}, expected {want!r}", column_index=i)
    if len(header) != len(EXTRACT_COLUMNS):
        i = min(len(header), len(EXTRACT_COLUMNS)) + 1
        raise ExtractSchemaError(
            f"header has {len(header)} columns, expected "
            f"{len(EXTRACT_COLUMNS)}", column_index=i)

    rows = []
    for record in reader:
        line = reader.line_num
        if not record:
            continue
        if len(record) != len(EXTRACT_COLUMNS):
            raise _row_error(
                f"expected {len(EXTRACT_COLUMNS)} fields, got {len(record)}", line)
        unit_id, kind_s, state_code, year_s, variable, category, count_s = record

        try:
            kind = UnitKind(kind_s)
        except ValueError:
            raise _row_error(f"unknown unit_kind {kind_s!r}", line) from None

        try:
            year = int(year_s)
        except ValueError:
            raise _row_error(f"census_year {year_s!r} is not an integer",
                                  line) from None
        if year not in CENSUS_YEARS:
            raise _row_error(f"census_year {year} not one of {CENSUS_YEARS}",
                                  line)

        if variable == TOTAL_VARIABLE:
            if category not in TOTAL_CATEGORIES:
                raise _row_error(
                    f"total rows must use category {TOTAL_CATEGORIES}, "
                    f"got {category!r}", line)
        elif variable in VARIABLES:
            codes = registry_for(variable, year).codes()
            if category not in codes:
                raise _row_error(
                    f"unknown category_code {category!r} for "
                    f"({variable}, {year})", line)
        else:
            raise _row_error(f"unknown variable {variable!r}", line)

        try:
            count = int(count_s)
        except ValueError:
            raise _row_error(f"count {count_s!r} is not an integer",
                                  line) from None
        if count < 0:
            raise _row_error(f"count must be nonnegative, got {count}", line)

        rows.append(_Row(line, unit_id, kind, state_code, year, variable,
                         category, count))
    return rows


def _assemble(rows: list[_Row]) -> tuple[list[GeoUnit], list[DemographicTable]]:
    unit_info: dict[tuple[int, str], tuple[UnitKind, str]] = {}
    cells: dict[tuple[str, int], dict[str, dict[str, int]]] = {}
    explicit_totals: dict[tuple[int, str], dict[str, int]] = {}

    for r in rows:
        key = (r.census_year, r.unit_id)
        info = (r.unit_kind, r.state_code)
        prior = unit_info.setdefault(key, info)
        if prior != info:
            raise _row_error(
                f"unit {r.unit_id!r} redeclared as {info} after {prior}", r.line)
        # Repeated cells with the same value merge silently (files may
        # overlap); conflicting values are data defects.
        if r.variable == TOTAL_VARIABLE:
            slot = explicit_totals.setdefault(key, {})
            if slot.get(r.category_code, r.count) != r.count:
                raise _row_error(
                    f"conflicting total rows for unit {r.unit_id!r}", r.line)
            slot[r.category_code] = r.count
        else:
            table = cells.setdefault((r.variable, r.census_year), {})
            per_unit = table.setdefault(r.unit_id, {})
            if per_unit.get(r.category_code, r.count) != r.count:
                raise _row_error(
                    f"conflicting rows for unit {r.unit_id!r}, category "
                    f"{r.category_code!r}", r.line)
            per_unit[r.category_code] = r.count

    _synthesize_states(unit_info, cells)

    units = []
    for (year, unit_id), (kind, state_code) in sorted(unit_info.items()):
        totals = explicit_totals.get((year, unit_id), {})
        pop = totals.get("population")
        if pop is None:
            pop = _derived_total(cells, unit_id, year, _POPULATION_PRIORITY)
        households = totals.get("households")
        if households is None:
            households = _derived_total(cells, unit_id, year, ("housing_status",))
            if households == 0 and not _appears_in(cells, unit_id, year,
                                                   "housing_status"):
                households = None
        units.append(GeoUnit(unit_id, kind, state_code, year,
                             pop if pop is not None else 0, households))

    tables = []
    for (variable, year) in sorted(cells):
        tables.append(DemographicTable(
            variable=variable,
            census_year=year,
            unit_of_analysis=unit_of_analysis_for(variable),
            counts=cells[(variable, year)],
        ))
    return units, tables


def _synthesize_states(unit_info, cells) -> None:
    """Add state units and state table rows for states present only via
    their districts. Sums are exact, so derived invariants hold."""
    state_ids: dict[tuple[int, str], str] = {}
    for (year, unit_id), (kind, state_code) in unit_info.items():
        if kind is UnitKind.STATE:
            state_ids[(year, state_code)] = unit_id

    district_states = {
        (year, state_code)
        for (year, _), (kind, state_code) in unit_info.items()
        if kind is UnitKind.DISTRICT
    }
    for (year, state_code) in sorted(district_states):
        if (year, state_code) not in state_ids:
            unit_info[(year, state_code)] = (UnitKind.STATE, state_code)
            state_ids[(year, state_code)] = state_code

    districts_by_state: dict[tuple[int, str], list[str]] = {}
    for (year, unit_id), (kind, state_code) in unit_info.items():
        if kind is UnitKind.DISTRICT:
            districts_by_state.setdefault((year, state_code), []).append(unit_id)

    for (variable, year), table in cells.items():
        for (d_year, state_code), district_ids in districts_by_state.items():
            if d_year != year:
                continue
            state_id = state_ids[(year, state_code)]
            if state_id in table:
                continue
            summed: dict[str, int] = {}
            found = False
            for did in district_ids:
                for code, count in table.get(did, {}).items():
                    found = True
                    summed[code] = summed.get(code, 0) + count
            if found:
                table[state_id] = summed


def _derived_total(cells, unit_id: str, year: int,
                   priority: tuple[str, ...]) -> int | None:
    for variable in priority:
        per_unit = cells.get((variable, year), {}).get(unit_id)
        if per_unit:
            return sum(per_unit.values())
    return None


def _appears_in(cells, unit_id: str, year: int, variable: str) -> bool:
    return unit_id in cells.get((variable, year), {})


def serialize_extract(units: Iterable[GeoUnit],
                      tables: Iterable[DemographicTable]) -> bytes:
    """Render a dataset back to canonical extract bytes.

    Explicit total rows are always emitted, so parsing the output
    reproduces the dataset exactly even when totals were declared rather
    than derivable.
    """
    unit_index = {(u.census_year, u.unit_id): u for u in units}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(EXTRACT_COLUMNS)

    for (year, unit_id) in sorted(unit_index):
        u = unit_index[(year, unit_id)]
        writer.writerow([u.unit_id, u.unit_kind.value, u.state_code,
                         u.census_year, TOTAL_VARIABLE, "population",
                         u.total_population])
        if u.total_households is not None:
            writer.writerow([u.unit_id, u.unit_kind.value, u.state_code,
                             u.census_year, TOTAL_VARIABLE, "households",
                             u.total_households])

    for table in sorted(tables, key=lambda t: (t.census_year, t.variable)):
        for unit_id in sorted(table.counts):
            u = unit_index.get((table.census_year, unit_id))
            if u is None:
                raise DataError(
                    f"table {table.variable!r} references unit {unit_id!r} "
                    f"absent from the unit list")
            for code in sorted(table.counts[unit_id]):
                writer.writerow([unit_id, u.unit_kind.value, u.state_code,
                                 table.census_year, table.variable, code,
                                 table.counts[unit_id][code]])
    return buf.getvalue().encode("utf-8")


@dataclass(frozen=True)
class HarmonizationMap:
    """Merges year-specific categories into stable trend categories.

    ``mapping`` sends every source category to its merged target;
    categories that survive unchanged map to themselves, which makes the
    merge idempotent.
    """

    variable: str
    mapping: Mapping[str, str]


_IDENTITY_VARS = ("race_ethnicity", "age_category", "sex")

HARMONIZATION_MAPS: dict[str, HarmonizationMap] = {
    **{
        v: HarmonizationMap(v, {c.code: c.code
                                for c in registry_for(v, harmonized=True).categories})
        for v in _IDENTITY_VARS
    },
    "rural_urban": HarmonizationMap("rural_urban", {
        "rural": "rural",
        "urban_cluster": "urban",
        "urbanized_area": "urban",
        "urban": "urban",
    }),
    "housing_status": HarmonizationMap("housing_status", {
        "renter": "renter",
        "owner_mortgage": "owner",
        "owner_clear": "owner",
        "owner": "owner",
    }),
}


def trend_map_for(variable: str) -> HarmonizationMap:
    try:
        return HARMONIZATION_MAPS[variable]
    except KeyError:
        raise HarmonizationError(
            f"no harmonization path for variable {variable!r}") from None


def harmonize(table: DemographicTable, map: HarmonizationMap) -> DemographicTable:
    """Merge a table's categories per the map; per-unit totals are
    preserved exactly and re-merging is a no-op."""
    if table.variable != map.variable:
        raise HarmonizationError(
            f"map is for {map.variable!r}, table is {table.variable!r}")
    merged: dict[str, dict[str, int]] = {}
    for unit_id, per_unit in table.counts.items():
        out: dict[str, int] = {}
        for code, count in per_unit.items():
            target = map.mapping.get(code)
            if target is None:
                raise HarmonizationError(
                    f"harmonization map for {map.variable!r} is missing "
                    f"category {code!r}")
            out[target] = out.get(target, 0) + count
        merged[unit_id] = out
    return DemographicTable(
        variable=table.variable,
        census_year=table.census_year,
        unit_of_analysis=table.unit_of_analysis,
        counts=merged,
        harmonized=True,
    )
