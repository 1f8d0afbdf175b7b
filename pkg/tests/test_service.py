import json
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from repweights.metrics import compute_metrics
from repweights.model import Body
from repweights.report import row_to_dict
from repweights.service import create_app

import datagen


@pytest.fixture(scope="module")
def client(tmp_path_factory):
    data_dir = tmp_path_factory.mktemp("svc")
    ds = datagen.merge_datasets(
        datagen.national_dataset(2020),
        datagen.state_level_dataset(2000, seed=41, n_states=8),
    )
    (data_dir / "extracts.csv").write_bytes(datagen.dataset_to_extract(ds))
    app = create_app(data_dir)
    with TestClient(app) as client:
        yield client


def test_health_after_startup(client):
    response = client.get("/api/v1/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert 2020 in body["census_years"]
    assert client.get("/api/v1/health").json() == body


def test_health_before_load_is_503(tmp_path):
    app = create_app(tmp_path, defer_load=True)
    with TestClient(app) as bare:
        response = bare.get("/api/v1/health")
        assert response.status_code == 503
        assert response.json()["code"] == "loading"
        response = bare.get("/api/v1/metrics?year=2020&variable=sex")
        assert response.status_code == 503


def test_metrics_endpoint_matches_library(client):
    response = client.get("/api/v1/metrics", params={
        "year": 2020, "variable": "rural_urban", "body": "senate"})
    assert response.status_code == 200
    ds = datagen.national_dataset(2020)
    expected = [row_to_dict(r) for r in
                compute_metrics(ds, "rural_urban", Body.SENATE, 2020)]
    assert response.json()["rows"] == expected


def test_unknown_variable_is_400(client):
    response = client.get("/api/v1/metrics", params={
        "year": 2020, "variable": "unknown"})
    assert response.status_code == 400
    assert response.json()["code"] == "unknown_variable"


def test_unknown_body_and_baseline_are_400(client):
    response = client.get("/api/v1/metrics", params={
        "year": 2020, "variable": "sex", "body": "parliament"})
    assert response.status_code == 400
    assert response.json()["code"] == "unknown_body"
    response = client.get("/api/v1/metrics", params={
        "year": 2020, "variable": "sex", "baseline": "galactic"})
    assert response.status_code == 400
    assert response.json()["code"] == "unknown_baseline"


def test_absent_year_is_404(client):
    response = client.get("/api/v1/metrics", params={
        "year": 2010, "variable": "sex"})
    assert response.status_code == 404
    assert response.json()["code"] == "not_found"


def test_scenario_default_matches_get_metrics(client):
    get_resp = client.get("/api/v1/metrics", params={
        "year": 2020, "variable": "sex", "body": "all"})
    post_resp = client.post("/api/v1/scenario", json={
        "year": 2020, "variable": "sex"})
    assert post_resp.status_code == 200
    assert json.dumps(post_resp.json()["rows"]) == \
        json.dumps(get_resp.json()["rows"])
    allocations = post_resp.json()["allocations"]
    assert allocations["house"]["total_votes"] == 435
    assert allocations["senate"]["total_votes"] == 100
    assert allocations["ec"]["total_votes"] == 538


def test_scenario_recomputed_seats_summary(tmp_path):
    data_dir = tmp_path / "three"
    data_dir.mkdir()
    ds = datagen.build_dataset(2020, {"A": 700, "B": 200, "C": 100},
                               variables=("sex",))
    (data_dir / "tiny.csv").write_bytes(datagen.dataset_to_extract(ds))
    app = create_app(data_dir)
    with TestClient(app) as client:
        response = client.post("/api/v1/scenario", json={
            "year": 2020, "variable": "sex", "body": "house",
            "house_seat_total": 10,
            "apportionment_source": "recomputed"})
        assert response.status_code == 200
        seats = response.json()["allocations"]["house"]["seats"]
        assert seats == {"A": 7, "B": 2, "C": 1}


def test_scenario_rejects_unknown_fields(client):
    response = client.post("/api/v1/scenario", json={
        "year": 2020, "variable": "sex", "surprise": True})
    assert response.status_code == 400
    assert response.json()["code"] == "invalid_scenario"


def test_scenario_bad_values_are_400(client):
    response = client.post("/api/v1/scenario", json={
        "year": 2020, "variable": "sex",
        "elector_award_method": {"CA": "winner_take_all"}})
    assert response.status_code == 400
    assert response.json()["code"] == "invalid_scenario"


def test_scenario_unbuildable_is_422(client):
    response = client.post("/api/v1/scenario", json={
        "year": 2020, "variable": "sex", "house_seat_total": 3,
        "apportionment_source": "recomputed"})
    assert response.status_code == 422
    assert response.json()["code"] == "scenario_unbuildable"


def test_ec_award_method_shift_changes_little(client):
    default = client.get("/api/v1/metrics", params={
        "year": 2020, "variable": "rural_urban", "body": "ec"}).json()["rows"]
    all_by_district = client.post("/api/v1/scenario", json={
        "year": 2020, "variable": "rural_urban", "body": "ec",
        "elector_award_method": {
            code: "by_district" for code in datagen.SEATS_2020_ELECTION},
    }).json()["rows"]
    for before, after in zip(default, all_by_district):
        assert after["absolute_weight"] == pytest.approx(
            before["absolute_weight"], abs=0.02)


def test_trends_endpoint_mirrors_compute(client):
    response = client.get("/api/v1/trends", params={
        "years": "2000,2010,2020", "variable": "rural_urban"})
    assert response.status_code == 200
    doc = response.json()
    assert doc["kind"] == "trends_fig3"
    by_key = {(s["body"], s["category_code"]): s for s in doc["series"]}
    # 2010 missing from the loaded data: only 2000 and 2020 points appear.
    assert [p["year"] for p in by_key[("senate", "rural")]["points"]] == \
        [2000, 2020]


def test_units_endpoint(client):
    response = client.get("/api/v1/units", params={
        "year": 2020, "body": "senate"})
    assert response.status_code == 200
    units = {u["unit_id"]: u["weight"] for u in response.json()["units"]}
    assert len(units) == 50
    response = client.get("/api/v1/units", params={
        "year": 2020, "body": "all"})
    assert response.status_code == 400


def test_concurrent_identical_requests_are_byte_identical(client):
    def call(_):
        return client.get("/api/v1/metrics", params={
            "year": 2020, "variable": "race_ethnicity", "body": "all"}).content

    with ThreadPoolExecutor(max_workers=16) as pool:
        bodies = list(pool.map(call, range(64)))
    assert len(set(bodies)) == 1


def test_cors_headers_present(client):
    response = client.get("/api/v1/health",
                          headers={"Origin": "http://localhost:5173"})
    assert response.headers.get("access-control-allow-origin")
