"""Deterministic synthetic-dataset builders shared by the test suite.

Everything here is seeded; the same arguments always produce the same
dataset, so CLI/service byte-level comparisons stay stable.
"""

from __future__ import annotations

import random

from repweights.ingest import serialize_extract
from repweights.model import (
    Dataset,
    DemographicTable,
    GeoUnit,
    UnitKind,
    VARIABLES,
    registry_for,
    unit_of_analysis_for,
)

# Seats in effect for the 2020 election cycle (pre-reapportionment).
SEATS_2020_ELECTION = {
    "AL": 7, "AK": 1, "AZ": 9, "AR": 4, "CA": 53, "CO": 7, "CT": 5,
    "DE": 1, "FL": 27, "GA": 14, "HI": 2, "ID": 2, "IL": 18, "IN": 9,
    "IA": 4, "KS": 4, "KY": 6, "LA": 6, "ME": 2, "MD": 8, "MA": 9,
    "MI": 14, "MN": 8, "MS": 4, "MO": 8, "MT": 1, "NE": 3, "NV": 4,
    "NH": 2, "NJ": 12, "NM": 3, "NY": 27, "NC": 13, "ND": 1, "OH": 16,
    "OK": 5, "OR": 5, "PA": 18, "RI": 2, "SC": 7, "SD": 1, "TN": 9,
    "TX": 36, "UT": 4, "VT": 1, "VA": 11, "WA": 10, "WV": 3, "WI": 8,
    "WY": 1,
}

assert sum(SEATS_2020_ELECTION.values()) == 435


def partition(total: int, weights: list[float]) -> list[int]:
    """Split a nonnegative integer into len(weights) parts, exactly."""
    if total == 0:
        return [0] * len(weights)
    wsum = sum(weights)
    raw = [total * w / wsum for w in weights]
    counts = [int(x) for x in raw]
    remainder = total - sum(counts)
    order = sorted(range(len(weights)), key=lambda i: (counts[i] - raw[i], i))
    for i in order[:remainder]:
        counts[i] += 1
    return counts


def district_id(state_code: str, ordinal: int, seats: int) -> str:
    if seats == 1:
        return f"{state_code}-00"
    return f"{state_code}-{ordinal:02d}"


def build_dataset(year: int, states: dict[str, int | list[int]], *,
                  dc_pop: int | None = None, pr_pop: int | None = None,
                  variables: tuple[str, ...] = ("sex",),
                  shares=None, seed: int = 7,
                  household_divisor: int = 2) -> Dataset:
    """Assemble a dataset from state populations (or district pop lists).

    ``shares`` maps (variable, unit_id) -> weights, or variable -> weights
    for every unit, or None for seeded random weights per unit.
    """
    rng = random.Random(seed)
    units: list[GeoUnit] = []
    leaf_units: list[GeoUnit] = []

    for code in sorted(states):
        pops = states[code]
        if isinstance(pops, int):
            state = _unit(code, UnitKind.STATE, code, year, pops,
                          household_divisor)
            units.append(state)
            leaf_units.append(state)
        else:
            district_units = []
            for i, pop in enumerate(pops, start=1):
                d = _unit(district_id(code, i, len(pops)), UnitKind.DISTRICT,
                          code, year, pop, household_divisor)
                district_units.append(d)
            state = GeoUnit(code, UnitKind.STATE, code, year,
                            sum(d.total_population for d in district_units),
                            sum(d.total_households for d in district_units))
            units.append(state)
            units.extend(district_units)
            leaf_units.extend(district_units)

    if dc_pop is not None:
        dc = _unit("DC", UnitKind.DC, "DC", year, dc_pop, household_divisor)
        units.append(dc)
        leaf_units.append(dc)
    if pr_pop is not None:
        pr = _unit("PR", UnitKind.TERRITORY, "PR", year, pr_pop,
                   household_divisor)
        units.append(pr)
        leaf_units.append(pr)

    tables = []
    for variable in variables:
        registry = registry_for(variable, year)
        codes = registry.codes()
        counts: dict[str, dict[str, int]] = {}
        for u in leaf_units:
            total = (u.total_households
                     if unit_of_analysis_for(variable).value == "households"
                     else u.total_population)
            weights = _weights_for(shares, variable, u.unit_id, len(codes), rng)
            counts[u.unit_id] = dict(zip(codes, partition(total, weights)))
        # State rows are sums over districts, kept exactly consistent.
        for state in units:
            if state.unit_kind is not UnitKind.STATE:
                continue
            if state.unit_id in counts:
                continue
            summed: dict[str, int] = {}
            for u in leaf_units:
                if u.unit_kind is UnitKind.DISTRICT and u.state_code == state.state_code:
                    for c, n in counts[u.unit_id].items():
                        summed[c] = summed.get(c, 0) + n
            counts[state.unit_id] = summed
        tables.append(DemographicTable(
            variable=variable, census_year=year,
            unit_of_analysis=unit_of_analysis_for(variable),
            counts=counts))
    return Dataset(units, tables)


def _unit(unit_id: str, kind: UnitKind, state_code: str, year: int,
          pop: int, household_divisor: int) -> GeoUnit:
    return GeoUnit(unit_id, kind, state_code, year, pop,
                   max(1, pop // household_divisor))


def _weights_for(shares, variable, unit_id, n, rng) -> list[float]:
    if shares is None:
        return [rng.uniform(0.2, 1.0) for _ in range(n)]
    if isinstance(shares, dict) and (variable, unit_id) in shares:
        return list(shares[(variable, unit_id)])
    if isinstance(shares, dict) and variable in shares:
        return list(shares[variable])
    return list(shares)


def two_state_dataset(year: int = 2020) -> Dataset:
    """Hand-checkable two-state fixture.

    male counts {A: 50, B: 90} over pops {A: 100, B: 900}: senate
    represented share 0.30, baseline 0.14, absolute weight 15/7,
    excess 160; relative weight vs the female referent is 129/49.
    """
    units = [
        GeoUnit("A", UnitKind.STATE, "A", year, 100, 40),
        GeoUnit("B", UnitKind.STATE, "B", year, 900, 360),
    ]
    tables = [DemographicTable(
        variable="sex", census_year=year,
        unit_of_analysis=unit_of_analysis_for("sex"),
        counts={"A": {"female": 50, "male": 50},
                "B": {"female": 810, "male": 90}})]
    return Dataset(units, tables)


def uniform_dataset(year: int = 2020, n_states: int = 4,
                    variables: tuple[str, ...] = ("sex", "age_category"),
                    with_dc: bool = True) -> Dataset:
    """Every unit carries identical category proportions (exactly)."""
    states: dict[str, int | list[int]] = {}
    for i in range(n_states):
        code = f"S{i + 1:02d}"
        n_districts = (i % 3) + 1
        # Populations divisible by 840 keep all category shares exact.
        states[code] = [840 * (10 + i + j) for j in range(n_districts)]
    shares = {
        "sex": [1, 1],
        "age_category": [1, 2, 2, 2],
        "race_ethnicity": [3, 1, 1, 1, 1, 1, 1, 1],
        "rural_urban": [1, 2] if year == 2020 else [1, 1, 1],
        "housing_status": [1, 1, 1] if year != 2000 else [1, 1],
    }
    return build_dataset(year, states, dc_pop=840 * 5 if with_dc else None,
                         variables=variables, shares=shares,
                         household_divisor=2)


def national_dataset(year: int = 2020, seed: int = 2020,
                     variables: tuple[str, ...] = VARIABLES) -> Dataset:
    """2020-shaped federation: 50 states, 435 districts, DC."""
    rng = random.Random(seed)
    states: dict[str, int | list[int]] = {}
    for code, seats in SEATS_2020_ELECTION.items():
        states[code] = [rng.randrange(600_000, 900_000) for _ in range(seats)]
    return build_dataset(year, states, dc_pop=705_749,
                         variables=variables, seed=seed + 1,
                         household_divisor=3)


def state_level_dataset(year: int = 2000, seed: int = 2000,
                        variables: tuple[str, ...] = VARIABLES,
                        n_states: int = 12) -> Dataset:
    """State-aggregated dataset (no districts), older-census flavor."""
    rng = random.Random(seed)
    states = {f"S{i + 1:02d}": rng.randrange(500_000, 8_000_000)
              for i in range(n_states)}
    return build_dataset(year, states, dc_pop=572_059,
                         variables=variables, seed=seed + 1,
                         household_divisor=3)


def dataset_to_extract(dataset: Dataset) -> bytes:
    return serialize_extract(dataset.units, dataset.tables)


def merge_datasets(*datasets: Dataset) -> Dataset:
    units: list[GeoUnit] = []
    tables: list[DemographicTable] = []
    for ds in datasets:
        units.extend(ds.units)
        tables.extend(ds.tables)
    return Dataset(tuple(units), tuple(tables))
