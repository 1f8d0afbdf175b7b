"""Domain types shared by every other module.

All types are immutable after construction and safe to share across
threads. Invariant checking is deliberately kept out of constructors:
``repweights.validation.validate_dataset`` reports violations instead of
raising, so partially-broken extracts can still be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .errors import DataError, ScenarioError

CENSUS_YEARS = (2000, 2010, 2020)


class UnitKind(str, Enum):
    STATE = "state"
    DISTRICT = "district"
    DC = "dc"
    TERRITORY = "territory"


class Body(str, Enum):
    HOUSE = "house"
    SENATE = "senate"
    EC = "ec"


class BaselineVariant(str, Enum):
    WITH_DC = "with_dc"
    WITHOUT_DC = "without_dc"
    WITH_DC_AND_PR = "with_dc_and_pr"


class UnitOfAnalysis(str, Enum):
    POPULATION = "population"
    HOUSEHOLDS = "households"


class AwardMethod(str, Enum):
    STATEWIDE = "statewide"
    BY_DISTRICT = "by_district"


class ApportionmentSource(str, Enum):
    FROM_INPUT_DATA = "from_input_data"
    RECOMPUTED = "recomputed"


VARIABLES = (
    "race_ethnicity",
    "age_category",
    "sex",
    "rural_urban",
    "housing_status",
)

# Variables counted by households rather than persons.
HOUSEHOLD_VARIABLES = frozenset({"housing_status"})


@dataclass(frozen=True)
class Category:
    code: str
    name: str


@dataclass(frozen=True)
class CategoryRegistry:
    """Ordered category set for one variable in one census year.

    Codes are stable snake_case tokens; display names may vary by year.
    The referent is the fixed comparison category used for relative
    weights.
    """

    variable: str
    census_year: int | None
    categories: tuple[Category, ...]
    referent: str

    def codes(self) -> tuple[str, ...]:
        return tuple(c.code for c in self.categories)

    def display_name(self, code: str) -> str:
        for c in self.categories:
            if c.code == code:
                return c.name
        raise DataError(f"unknown category {code!r} for {self.variable}")


_RACE = (
    Category("white_nh", "White"),
    Category("hispanic", "Hispanic"),
    Category("black_nh", "Black"),
    Category("asian_nh", "Asian"),
    Category("multiple_nh", "Multiple"),
    Category("aian_nh", "AIAN"),
    Category("nhopi_nh", "NHOPI"),
    Category("other_nh", "Other"),
)

_AGE = (
    Category("age_0_17", "0-17"),
    Category("age_18_39", "18-39"),
    Category("age_40_64", "40-64"),
    Category("age_65_plus", "65+"),
)

_SEX = (
    Category("female", "Female"),
    Category("male", "Male"),
)

_RURAL_URBAN_SPLIT = (
    Category("rural", "Rural"),
    Category("urban_cluster", "Urban Cluster"),
    Category("urbanized_area", "Urbanized Area"),
)

_RURAL_URBAN_MERGED = (
    Category("rural", "Rural"),
    Category("urban", "Urban"),
)

_HOUSING_SPLIT = (
    Category("renter", "Renter"),
    Category("owner_mortgage", "Owner: Mortgage"),
    Category("owner_clear", "Owner: Clear"),
)

_HOUSING_MERGED = (
    Category("renter", "Renter"),
    Category("owner", "Owner"),
)

# (variable, year) -> ordered categories; rural/urban split and housing
# owner subtypes are year-dependent, everything else is stable.
_YEAR_CATEGORIES: dict[tuple[str, int], tuple[Category, ...]] = {
    ("race_ethnicity", 2000): _RACE,
    ("race_ethnicity", 2010): _RACE,
    ("race_ethnicity", 2020): _RACE,
    ("age_category", 2000): _AGE,
    ("age_category", 2010): _AGE,
    ("age_category", 2020): _AGE,
    ("sex", 2000): _SEX,
    ("sex", 2010): _SEX,
    ("sex", 2020): _SEX,
    ("rural_urban", 2000): _RURAL_URBAN_SPLIT,
    ("rural_urban", 2010): _RURAL_URBAN_SPLIT,
    ("rural_urban", 2020): _RURAL_URBAN_MERGED,
    ("housing_status", 2000): _HOUSING_MERGED,
    ("housing_status", 2010): _HOUSING_SPLIT,
    ("housing_status", 2020): _HOUSING_SPLIT,
}

# Referents: the comparison category for relative weights, per variable.
_REFERENTS = {
    "race_ethnicity": "white_nh",
    "age_category": "age_0_17",
    "sex": "female",
    "rural_urban": "rural",
    "housing_status": "renter",
}

# Harmonized (cross-year trend) category sets.
_TREND_CATEGORIES = {
    "race_ethnicity": _RACE,
    "age_category": _AGE,
    "sex": _SEX,
    "rural_urban": _RURAL_URBAN_MERGED,
    "housing_status": _HOUSING_MERGED,
}


def registry_for(variable: str, census_year: int | None = None,
                 harmonized: bool = False) -> CategoryRegistry:
    """Return the category registry for a variable.

    With ``harmonized=True`` (or ``census_year=None``) the cross-year
    trend set is returned; otherwise the year-specific set.
    """
    if variable not in VARIABLES:
        raise DataError(f"unknown variable {variable!r}")
    if harmonized or census_year is None:
        return CategoryRegistry(variable, None, _TREND_CATEGORIES[variable],
                                _REFERENTS[variable])
    try:
        cats = _YEAR_CATEGORIES[(variable, census_year)]
    except KeyError:
        raise DataError(
            f"no category set for {variable!r} in year {census_year}") from None
    return CategoryRegistry(variable, census_year, cats, _REFERENTS[variable])


def unit_of_analysis_for(variable: str) -> UnitOfAnalysis:
    if variable in HOUSEHOLD_VARIABLES:
        return UnitOfAnalysis.HOUSEHOLDS
    return UnitOfAnalysis.POPULATION


@dataclass(frozen=True)
class GeoUnit:
    """A population-bearing geographic unit for one census year."""

    unit_id: str
    unit_kind: UnitKind
    state_code: str
    census_year: int
    total_population: int
    total_households: int | None = None


@dataclass(frozen=True)
class DemographicTable:
    """Per-unit counts for one variable's categories in one census year.

    ``counts`` maps unit_id -> category_code -> count. Housing tables are
    counted by households; all other variables by population.
    """

    variable: str
    census_year: int
    unit_of_analysis: UnitOfAnalysis
    counts: Mapping[str, Mapping[str, int]]
    harmonized: bool = False

    def count(self, unit_id: str, category_code: str) -> int:
        return self.counts.get(unit_id, {}).get(category_code, 0)

    def unit_total(self, unit_id: str) -> int:
        return sum(self.counts.get(unit_id, {}).values())

    def category_codes(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for per_unit in self.counts.values():
            for code in per_unit:
                seen.setdefault(code)
        return tuple(seen)

    def has_unit(self, unit_id: str) -> bool:
        return unit_id in self.counts


@dataclass(frozen=True)
class BodyAllocation:
    """Mapping from voting units to vote counts for one body.

    ``unit_sources`` resolves each voting unit to the dataset unit that
    supplies its demographics. For real units this is the identity; for
    synthetic districts (state-level-only data or recomputed
    apportionment) it points at the parent state.
    """

    body: Body
    census_year: int
    votes: Mapping[str, int]
    unit_sources: Mapping[str, str]
    assumptions: tuple[str, ...] = ()

    @property
    def total_votes(self) -> int:
        return sum(self.votes.values())

    def source_of(self, unit_id: str) -> str:
        return self.unit_sources.get(unit_id, unit_id)


def _default_award_methods() -> Mapping[str, AwardMethod]:
    return {"ME": AwardMethod.BY_DISTRICT, "NE": AwardMethod.BY_DISTRICT}


@dataclass(frozen=True)
class Scenario:
    """What-if configuration for allocations and baselines.

    States absent from ``elector_award_method`` award electors statewide;
    the default maps only Maine and Nebraska to by-district awarding.
    """

    baseline_variant: BaselineVariant = BaselineVariant.WITH_DC
    elector_award_method: Mapping[str, AwardMethod] = field(
        default_factory=_default_award_methods)
    house_seat_total: int = 435
    apportionment_source: ApportionmentSource = ApportionmentSource.FROM_INPUT_DATA

    def award_method(self, state_code: str) -> AwardMethod:
        return self.elector_award_method.get(state_code, AwardMethod.STATEWIDE)


_SCENARIO_KEYS = frozenset({
    "baseline_variant", "elector_award_method", "house_seat_total",
    "apportionment_source",
})


def scenario_from_dict(data: Mapping) -> Scenario:
    """Build a Scenario from a plain mapping (scenario file, API request).

    Absent fields keep their defaults; award-method entries override the
    default map per state. Hyphenated enum spellings are accepted.
    """
    unknown = set(data) - _SCENARIO_KEYS
    if unknown:
        raise ScenarioError(
            "unknown scenario fields: " + ", ".join(sorted(unknown)))

    def _enum(cls, value, label):
        try:
            return cls(str(value).replace("-", "_"))
        except ValueError:
            choices = ", ".join(v.value for v in cls)
            raise ScenarioError(
                f"bad {label} {value!r}; choices: {choices}") from None

    baseline = BaselineVariant.WITH_DC
    if "baseline_variant" in data:
        baseline = _enum(BaselineVariant, data["baseline_variant"],
                         "baseline_variant")

    methods = dict(_default_award_methods())
    overrides = data.get("elector_award_method", {})
    if not isinstance(overrides, Mapping):
        raise ScenarioError("elector_award_method must be a mapping")
    for state, value in overrides.items():
        methods[str(state)] = _enum(AwardMethod, value, "award method")

    seat_total = data.get("house_seat_total", 435)
    if not isinstance(seat_total, int) or isinstance(seat_total, bool) \
            or seat_total <= 0:
        raise ScenarioError(
            f"house_seat_total must be a positive integer, got {seat_total!r}")

    source = ApportionmentSource.FROM_INPUT_DATA
    if "apportionment_source" in data:
        source = _enum(ApportionmentSource, data["apportionment_source"],
                       "apportionment_source")

    return Scenario(baseline_variant=baseline, elector_award_method=methods,
                    house_seat_total=seat_total, apportionment_source=source)


@dataclass(frozen=True)
class MetricsRow:
    """Per-category results: baseline and represented shares plus the
    three derived metrics for one body/variable/year/baseline.

    ``absolute_weight`` and ``relative_weight`` are None when the
    baseline share is zero (the weight is undefined, the row is kept).
    ``excess_population`` is in persons, or households for housing.
    """

    variable: str
    category_code: str
    body: Body
    census_year: int
    baseline_variant: BaselineVariant
    unit_of_analysis: UnitOfAnalysis
    pi0: float
    pib: float
    absolute_weight: float | None
    relative_weight: float | None
    excess_population: float


class Dataset:
    """Immutable container for parsed units and tables, possibly spanning
    several census years. Indexes are built once at construction."""

    def __init__(self, units: tuple[GeoUnit, ...] | list[GeoUnit],
                 tables: tuple[DemographicTable, ...] | list[DemographicTable]):
        self.units = tuple(units)
        self.tables = tuple(tables)
        self._units_by_key: dict[tuple[int, str], GeoUnit] = {}
        for u in self.units:
            self._units_by_key.setdefault((u.census_year, u.unit_id), u)
        self._tables_by_key = {(t.variable, t.census_year): t for t in self.tables}
        self._districts: dict[tuple[int, str], list[GeoUnit]] = {}
        for u in self.units:
            if u.unit_kind is UnitKind.DISTRICT:
                self._districts.setdefault((u.census_year, u.state_code), []).append(u)
        for ds in self._districts.values():
            ds.sort(key=lambda u: u.unit_id)

    def years(self) -> tuple[int, ...]:
        return tuple(sorted({u.census_year for u in self.units}))

    def variables(self, census_year: int) -> tuple[str, ...]:
        return tuple(v for v in VARIABLES
                     if (v, census_year) in self._tables_by_key)

    def unit(self, census_year: int, unit_id: str) -> GeoUnit:
        try:
            return self._units_by_key[(census_year, unit_id)]
        except KeyError:
            raise DataError(f"no unit {unit_id!r} in year {census_year}") from None

    def has_unit(self, census_year: int, unit_id: str) -> bool:
        return (census_year, unit_id) in self._units_by_key

    def table(self, variable: str, census_year: int) -> DemographicTable:
        try:
            return self._tables_by_key[(variable, census_year)]
        except KeyError:
            raise DataError(
                f"no table for {variable!r} in year {census_year}") from None

    def has_table(self, variable: str, census_year: int) -> bool:
        return (variable, census_year) in self._tables_by_key

    def units_for_year(self, census_year: int) -> tuple[GeoUnit, ...]:
        return tuple(u for u in self.units if u.census_year == census_year)

    def states(self, census_year: int) -> tuple[GeoUnit, ...]:
        return tuple(sorted(
            (u for u in self.units_for_year(census_year)
             if u.unit_kind is UnitKind.STATE),
            key=lambda u: u.unit_id))

    def districts_of(self, census_year: int, state_code: str) -> tuple[GeoUnit, ...]:
        return tuple(self._districts.get((census_year, state_code), ()))

    def dc_unit(self, census_year: int) -> GeoUnit | None:
        for u in self.units_for_year(census_year):
            if u.unit_kind is UnitKind.DC:
                return u
        return None

    def territory(self, census_year: int, state_code: str) -> GeoUnit | None:
        for u in self.units_for_year(census_year):
            if u.unit_kind is UnitKind.TERRITORY and u.state_code == state_code:
                return u
        return None
