"""Seat apportionment and vote-structure construction for the three bodies.

House seats use the method of equal proportions: every state starts at
one seat and remaining seats go, one at a time, to the state with the
highest priority value pop/sqrt(n(n+1)) where n is its current seat
count. Priorities are compared in exact rational arithmetic on the
squared form pop^2/(n(n+1)) so results are bit-reproducible; ties break
by larger population, then lexicographic state code.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import ApportionmentError, MetricsError
from .model import (
    ApportionmentSource,
    AwardMethod,
    BaselineVariant,
    Body,
    BodyAllocation,
    Dataset,
    GeoUnit,
    Scenario,
    UnitKind,
)

DC_ELECTORS = 3
SENATE_VOTES_PER_STATE = 2

SYNTHETIC_DISTRICTS_NOTE = (
    "house seats recomputed from state populations; districts are synthetic "
    "equal-population units carrying state-level demographics"
)


@dataclass(frozen=True)
class SeatApportionment:
    seats: Mapping[str, int]
    seat_total: int
    census_year: int | None = None


def huntington_hill(populations: Mapping[str, int],
                    seat_total: int,
                    census_year: int | None = None) -> SeatApportionment:
    """Apportion seats to states by the method of equal proportions."""
    states = sorted(populations)
    if not states:
        raise ApportionmentError("no states to apportion")
    if seat_total < len(states):
        raise ApportionmentError(
            f"seat total {seat_total} is below the state count {len(states)}")
    for code in states:
        if populations[code] <= 0:
            raise ApportionmentError(
                f"state {code!r} has nonpositive population")

    seats = {code: 1 for code in states}

    def entry(code: str) -> tuple[Fraction, int, str]:
        pop = populations[code]
        n = seats[code]
        # Highest priority first: heapq is a min-heap, so negate.
        return (-Fraction(pop * pop, n * (n + 1)), -pop, code)

    heap = [entry(code) for code in states]
    heapq.heapify(heap)
    for _ in range(seat_total - len(states)):
        _, _, code = heapq.heappop(heap)
        seats[code] += 1
        heapq.heappush(heap, entry(code))
    return SeatApportionment(seats=seats, seat_total=seat_total,
                             census_year=census_year)


def build_allocation(dataset: Dataset, body: Body, census_year: int,
                     scenario: Scenario | None = None) -> BodyAllocation:
    scenario = scenario or Scenario()
    if body is Body.HOUSE:
        return build_house(dataset, census_year, scenario)
    if body is Body.SENATE:
        return build_senate(dataset, census_year, scenario)
    if body is Body.EC:
        return build_ec(dataset, census_year, scenario)
    raise ApportionmentError(f"unknown body {body!r}")


def build_senate(dataset: Dataset, census_year: int,
                 scenario: Scenario | None = None) -> BodyAllocation:
    """Two votes per state; DC and territories never hold Senate seats."""
    states = dataset.states(census_year)
    if not states:
        raise ApportionmentError(f"no states in dataset for {census_year}")
    votes = {s.unit_id: SENATE_VOTES_PER_STATE for s in states}
    return BodyAllocation(
        body=Body.SENATE, census_year=census_year, votes=votes,
        unit_sources={u: u for u in votes})


def build_house(dataset: Dataset, census_year: int,
                scenario: Scenario | None = None) -> BodyAllocation:
    """One vote per congressional district.

    With from_input_data, districts come straight from the dataset; a
    dataset with no districts at all (state-level pulls) falls back to
    synthetic districts derived from recomputed seat counts, flagged via
    the allocation's assumptions.
    """
    scenario = scenario or Scenario()
    seats, synthetic, assumptions = _house_seats(dataset, census_year, scenario)

    votes: dict[str, int] = {}
    sources: dict[str, str] = {}
    for state in dataset.states(census_year):
        if synthetic:
            for did in _synthetic_district_ids(state.state_code,
                                               seats[state.state_code]):
                votes[did] = 1
                sources[did] = state.unit_id
        else:
            for d in dataset.districts_of(census_year, state.state_code):
                votes[d.unit_id] = 1
                sources[d.unit_id] = d.unit_id
    return BodyAllocation(body=Body.HOUSE, census_year=census_year,
                          votes=votes, unit_sources=sources,
                          assumptions=assumptions)


def build_ec(dataset: Dataset, census_year: int,
             scenario: Scenario | None = None) -> BodyAllocation:
    """Electoral College units under the scenario's award methods.

    Statewide states form one unit worth seats+2 votes. By-district
    states contribute one 1-vote unit per district plus a 2-vote unit
    for the whole state. DC, when present, is a 3-vote unit. The total
    never depends on the award-method mapping.
    """
    scenario = scenario or Scenario()
    seats, synthetic, assumptions = _house_seats(dataset, census_year, scenario)

    votes: dict[str, int] = {}
    sources: dict[str, str] = {}
    for state in dataset.states(census_year):
        code = state.state_code
        if scenario.award_method(code) is AwardMethod.STATEWIDE:
            votes[state.unit_id] = seats[code] + 2
            sources[state.unit_id] = state.unit_id
            continue
        if synthetic:
            district_ids = _synthetic_district_ids(code, seats[code])
            district_sources = {did: state.unit_id for did in district_ids}
        else:
            districts = dataset.districts_of(census_year, code)
            if not districts:
                raise ApportionmentError(
                    f"state {code} awards electors by district but has no "
                    f"district data for {census_year}")
            district_ids = [d.unit_id for d in districts]
            district_sources = {d.unit_id: d.unit_id for d in districts}
        for did in district_ids:
            votes[did] = 1
        sources.update(district_sources)
        votes[state.unit_id] = 2
        sources[state.unit_id] = state.unit_id

    dc = dataset.dc_unit(census_year)
    if dc is not None:
        votes[dc.unit_id] = DC_ELECTORS
        sources[dc.unit_id] = dc.unit_id

    return BodyAllocation(body=Body.EC, census_year=census_year,
                          votes=votes, unit_sources=sources,
                          assumptions=assumptions)


def _house_seats(dataset: Dataset, census_year: int,
                 scenario: Scenario) -> tuple[dict[str, int], bool, tuple[str, ...]]:
    """Seats per state code, plus whether districts must be synthesized."""
    states = dataset.states(census_year)
    if not states:
        raise ApportionmentError(f"no states in dataset for {census_year}")
    if scenario.house_seat_total < len(states):
        raise ApportionmentError(
            f"house seat total {scenario.house_seat_total} is below the "
            f"state count {len(states)}")

    if scenario.apportionment_source is not ApportionmentSource.RECOMPUTED:
        with_districts = [s for s in states
                          if dataset.districts_of(census_year, s.state_code)]
        if len(with_districts) == len(states):
            seats = {s.state_code: len(dataset.districts_of(census_year, s.state_code))
                     for s in states}
            return seats, False, ()
        if with_districts:
            missing = sorted(s.state_code for s in states
                             if s not in with_districts)
            raise ApportionmentError(
                "district data missing for states: " + ", ".join(missing))
        # State-level-only dataset: fall through to recomputed seats.

    populations = {s.state_code: s.total_population for s in states}
    apportionment = huntington_hill(populations, scenario.house_seat_total,
                                    census_year)
    return dict(apportionment.seats), True, (SYNTHETIC_DISTRICTS_NOTE,)


def _synthetic_district_ids(state_code: str, seat_count: int) -> list[str]:
    if seat_count == 1:
        return [f"{state_code}-00"]
    return [f"{state_code}-{n:02d}" for n in range(1, seat_count + 1)]


def unit_weight(dataset: Dataset, allocation: BodyAllocation,
                baseline_variant: BaselineVariant = BaselineVariant.WITH_DC,
                ) -> dict[str, float]:
    """Per-unit representation weights: vote share over population share.

    District votes (real or synthetic) are rolled up to their state, so
    the result is keyed by state-level units (states plus DC for the
    Electoral College).
    """
    year = allocation.census_year
    votes_by_display: dict[str, int] = {}
    for unit_id, v in allocation.votes.items():
        display = _display_unit(dataset, allocation, unit_id)
        votes_by_display[display.unit_id] = votes_by_display.get(display.unit_id, 0) + v

    baseline_units = baseline_geo_units(dataset, year, baseline_variant)
    baseline_pop = sum(u.total_population for u in baseline_units)
    if baseline_pop <= 0:
        raise MetricsError("baseline population is zero")

    total_votes = allocation.total_votes
    weights: dict[str, float] = {}
    for unit_id in sorted(votes_by_display):
        unit = dataset.unit(year, unit_id)
        if unit.total_population == 0:
            raise MetricsError(f"unit {unit_id!r} has zero population")
        vote_share = votes_by_display[unit_id] / total_votes
        pop_share = unit.total_population / baseline_pop
        weights[unit_id] = vote_share / pop_share
    return weights


def _display_unit(dataset: Dataset, allocation: BodyAllocation,
                  unit_id: str) -> GeoUnit:
    source_id = allocation.source_of(unit_id)
    unit = dataset.unit(allocation.census_year, source_id)
    if unit.unit_kind is UnitKind.DISTRICT:
        for candidate in dataset.states(allocation.census_year):
            if candidate.state_code == unit.state_code:
                return candidate
        raise MetricsError(
            f"district {unit_id!r} has no parent state in the dataset")
    return unit


def baseline_geo_units(dataset: Dataset, census_year: int,
                       variant: BaselineVariant) -> tuple[GeoUnit, ...]:
    """The units whose populations make up the comparison baseline.

    Always the states; DC unless excluded; Puerto Rico only when asked.
    Other territories never enter a baseline.
    """
    units = list(dataset.states(census_year))
    if variant in (BaselineVariant.WITH_DC, BaselineVariant.WITH_DC_AND_PR):
        dc = dataset.dc_unit(census_year)
        if dc is not None:
            units.append(dc)
    if variant is BaselineVariant.WITH_DC_AND_PR:
        pr = dataset.territory(census_year, "PR")
        if pr is not None:
            units.append(pr)
    return tuple(units)
