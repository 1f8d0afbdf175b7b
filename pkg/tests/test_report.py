import csv
import io
import json

import pytest

from repweights.apportion import build_allocation, unit_weight
from repweights.errors import DataError
from repweights.metrics import compute_metrics
from repweights.model import (
    BaselineVariant,
    Body,
    MetricsRow,
    UnitOfAnalysis,
)
from repweights.report import figure_data, render_table
from repweights.trends import compute_trends

import datagen


def _row(**overrides):
    base = dict(
        variable="rural_urban", category_code="rural", body=Body.SENATE,
        census_year=2020, baseline_variant=BaselineVariant.WITH_DC,
        unit_of_analysis=UnitOfAnalysis.POPULATION,
        pi0=0.2, pib=0.27, absolute_weight=1.3781,
        relative_weight=1.0, excess_population=25058678.4)
    base.update(overrides)
    return MetricsRow(**base)


def test_text_formatting_contract():
    text = render_table([_row()], "text").decode()
    assert "1.378" in text
    assert "25,058,679" in text or "25,058,678" in text


def test_excess_rounds_half_away_from_zero():
    up = render_table([_row(excess_population=2.5)], "text").decode()
    down = render_table([_row(excess_population=-2.5)], "text").decode()
    assert " 3" in up
    assert "-3" in down


def test_text_pivots_bodies_in_table_order(national):
    rows = []
    for body in (Body.EC, Body.HOUSE, Body.SENATE):  # scrambled on purpose
        rows.extend(compute_metrics(national, "rural_urban", body, 2020))
    text = render_table(rows, "text").decode()
    header = text.splitlines()[0]
    assert header.index("House") < header.index("Senate") < \
        header.index("Electoral College")
    assert text.splitlines()[1].count("AW") == 3


def test_csv_round_trip_full_precision(national):
    rows = compute_metrics(national, "race_ethnicity", Body.SENATE, 2020)
    blob = render_table(rows, "csv")
    parsed = list(csv.DictReader(io.StringIO(blob.decode())))
    assert len(parsed) == len(rows)
    for row, rec in zip(rows, parsed):
        assert rec["variable"] == row.variable
        assert rec["category"] == row.category_code
        assert rec["body"] == row.body.value
        assert int(rec["year"]) == row.census_year
        assert float(rec["pi0"]) == row.pi0
        assert float(rec["pib"]) == row.pib
        assert float(rec["aw"]) == row.absolute_weight
        assert float(rec["rw"]) == row.relative_weight
        assert float(rec["ep"]) == row.excess_population


def test_json_round_trip_full_precision(national):
    rows = compute_metrics(national, "housing_status", Body.EC, 2020)
    doc = json.loads(render_table(rows, "json").decode())
    for row, rec in zip(rows, doc):
        assert rec["pi0"] == row.pi0
        assert rec["pib"] == row.pib
        assert rec["absolute_weight"] == row.absolute_weight
        assert rec["excess_population"] == row.excess_population
        assert rec["unit_of_analysis"] == row.unit_of_analysis.value


def test_null_weights_render_as_empty_csv_cells():
    row = _row(absolute_weight=None, relative_weight=None)
    blob = render_table([row], "csv").decode()
    record = blob.splitlines()[1].split(",")
    assert record[7] == "" and record[8] == ""


def test_rendering_is_pure(national):
    rows = compute_metrics(national, "sex", Body.HOUSE, 2020)
    assert render_table(rows, "csv") == render_table(rows, "csv")
    assert render_table(rows, "json") == render_table(rows, "json")
    assert render_table(rows, "text") == render_table(rows, "text")


def test_empty_rows_rejected():
    with pytest.raises(DataError):
        render_table([], "csv")
    with pytest.raises(DataError):
        render_table([_row()], "yaml")


def test_fig2_has_baseline_plus_three_bodies(national):
    rows = []
    for body in Body:
        rows.extend(compute_metrics(national, "sex", body, 2020))
    doc = figure_data("proportions_fig2", rows)
    labels = [s["label"] for s in doc["series"]]
    assert labels == ["baseline", "house", "senate", "ec"]
    for series in doc["series"]:
        assert len(series["points"]) == 2


def test_fig2_small_proportions_unlabeled(national):
    rows = []
    for body in Body:
        rows.extend(compute_metrics(national, "race_ethnicity", body, 2020))
    doc = figure_data("proportions_fig2", rows)
    for series in doc["series"]:
        for point in series["points"]:
            assert point["labeled"] == (point["proportion"] >= 0.10)


def test_fig1_matches_unit_weight_outputs():
    ds = datagen.build_dataset(2020, {"A": [400, 600], "B": [2_000]},
                               dc_pop=100, variables=("sex",), seed=8)
    weights = {
        body: unit_weight(ds, build_allocation(ds, body, 2020))
        for body in Body
    }
    doc = figure_data("unit_weights_fig1", weights, census_year=2020)
    entries = {e["unit_id"]: e["weights"] for e in doc["entries"]}
    assert entries["A"]["senate"] == weights[Body.SENATE]["A"]
    assert entries["A"]["house"] == weights[Body.HOUSE]["A"]
    assert entries["DC"]["ec"] == weights[Body.EC]["DC"]
    assert "senate" not in entries["DC"]
    assert doc["census_year"] == 2020


def test_fig3_flat_document_on_constant_years():
    years = (2010, 2020)
    ds = datagen.merge_datasets(*[
        datagen.build_dataset(y, {"A": 4_000, "B": 12_000},
                              variables=("sex",), shares={"sex": [1, 3]})
        for y in years
    ])
    doc = figure_data("trends_fig3", compute_trends(ds, years, "sex"))
    assert doc["variable"] == "sex"
    for series in doc["series"]:
        values = [p["absolute_weight"] for p in series["points"]]
        assert max(values) - min(values) < 1e-12


def test_unknown_figure_kind_rejected():
    with pytest.raises(DataError):
        figure_data("fig4", [])
