import pytest

from repweights.errors import DataError, ScenarioError
from repweights.model import (
    AwardMethod,
    BaselineVariant,
    ApportionmentSource,
    Scenario,
    VARIABLES,
    registry_for,
    scenario_from_dict,
    unit_of_analysis_for,
)


def test_referents_are_fixed():
    expected = {
        "race_ethnicity": "white_nh",
        "age_category": "age_0_17",
        "sex": "female",
        "rural_urban": "rural",
        "housing_status": "renter",
    }
    for variable, referent in expected.items():
        for year in (2000, 2010, 2020):
            registry = registry_for(variable, year)
            assert registry.referent == referent
            assert referent in registry.codes()


def test_year_dependent_category_sets():
    assert registry_for("rural_urban", 2000).codes() == (
        "rural", "urban_cluster", "urbanized_area")
    assert registry_for("rural_urban", 2020).codes() == ("rural", "urban")
    assert registry_for("housing_status", 2000).codes() == ("renter", "owner")
    assert registry_for("housing_status", 2010).codes() == (
        "renter", "owner_mortgage", "owner_clear")
    assert registry_for("housing_status", harmonized=True).codes() == (
        "renter", "owner")


def test_housing_is_household_level():
    assert unit_of_analysis_for("housing_status").value == "households"
    for variable in VARIABLES:
        if variable != "housing_status":
            assert unit_of_analysis_for(variable).value == "population"


def test_registry_rejects_unknown_variable():
    with pytest.raises(DataError):
        registry_for("income", 2020)


def test_scenario_defaults():
    s = Scenario()
    assert s.baseline_variant is BaselineVariant.WITH_DC
    assert s.house_seat_total == 435
    assert s.apportionment_source is ApportionmentSource.FROM_INPUT_DATA
    assert s.award_method("ME") is AwardMethod.BY_DISTRICT
    assert s.award_method("NE") is AwardMethod.BY_DISTRICT
    assert s.award_method("CA") is AwardMethod.STATEWIDE


def test_scenario_from_dict_merges_overrides():
    s = scenario_from_dict({
        "baseline_variant": "without-dc",
        "elector_award_method": {"CA": "by_district", "ME": "statewide"},
        "house_seat_total": 600,
    })
    assert s.baseline_variant is BaselineVariant.WITHOUT_DC
    assert s.award_method("CA") is AwardMethod.BY_DISTRICT
    assert s.award_method("ME") is AwardMethod.STATEWIDE
    assert s.award_method("NE") is AwardMethod.BY_DISTRICT
    assert s.house_seat_total == 600


@pytest.mark.parametrize("payload", [
    {"unknown_field": 1},
    {"baseline_variant": "with_everything"},
    {"elector_award_method": {"CA": "winner_take_all"}},
    {"house_seat_total": 0},
    {"house_seat_total": "lots"},
])
def test_scenario_from_dict_rejects_bad_fields(payload):
    with pytest.raises(ScenarioError):
        scenario_from_dict(payload)
