"""HTTP JSON API over an immutable in-memory dataset.

The dataset loads once (at startup or explicitly) and is never mutated,
so any number of concurrent readers see identical results. Errors use a
{code, message, details} envelope. All endpoints live under /api/v1.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Callable, Mapping

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from . import __version__, apportion, metrics, report, trends
from .errors import (
    ApportionmentError,
    DataError,
    HarmonizationError,
    MetricsError,
    RepweightsError,
    ScenarioError,
)
from .ingest import load_dataset
from .model import (
    BaselineVariant,
    Body,
    Dataset,
    Scenario,
    UnitKind,
    VARIABLES,
    scenario_from_dict,
)
from .validation import validate_dataset

BODY_CHOICES = ("house", "senate", "ec", "all")


class ScenarioRequest(BaseModel):
    """What-if evaluation request; unknown fields are rejected."""

    model_config = ConfigDict(extra="forbid")

    year: int
    variable: str
    body: str = "all"
    baseline_variant: str = "with_dc"
    elector_award_method: dict[str, str] = {}
    house_seat_total: int = 435
    apportionment_source: str = "from_input_data"


class _DataHolder:
    """Loads extract files once; the loaded dataset never changes."""

    def __init__(self, data_dir: str | Path | None,
                 dataset: Dataset | None = None):
        self.data_dir = Path(data_dir) if data_dir is not None else None
        self.dataset = dataset
        self._lock = threading.Lock()

    @property
    def loaded(self) -> bool:
        return self.dataset is not None

    def load(self) -> Dataset:
        with self._lock:
            if self.dataset is None:
                if self.data_dir is None:
                    raise DataError("no data directory configured")
                dataset = load_extract_dir(self.data_dir)
                self.dataset = dataset
            return self.dataset


def load_extract_dir(data_dir: str | Path) -> Dataset:
    """Load and validate every extract in a directory; invalid data is
    refused rather than served."""
    data_dir = Path(data_dir)
    if not data_dir.is_dir():
        raise DataError(f"data directory {data_dir} does not exist")
    paths = sorted(data_dir.glob("*.csv"))
    if not paths:
        raise DataError(f"no extract files (*.csv) in {data_dir}")
    dataset = load_dataset(paths)
    vreport = validate_dataset(dataset.units, dataset.tables)
    if not vreport.ok:
        raise DataError("dataset failed validation:\n" + vreport.summary())
    return dataset


def _error(status: int, code: str, message: str,
           details: Mapping | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "details": dict(details or {})})


def create_app(data_dir: str | Path | None = None, *,
               dataset: Dataset | None = None,
               cors_origins: list[str] | None = None,
               defer_load: bool = False,
               on_ready: Callable[[], None] | None = None) -> FastAPI:
    """Build the API app around one data directory or a preloaded dataset."""
    holder = _DataHolder(data_dir, dataset)

    async def lifespan(app: FastAPI):
        if not defer_load:
            holder.load()
        if on_ready is not None:
            on_ready()
        yield

    app = FastAPI(title="repweights", version=__version__, lifespan=lifespan)
    app.state.holder = holder
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins if cors_origins is not None else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _on_bad_request(request: Request, exc: RequestValidationError):
        code = ("invalid_scenario" if request.url.path.endswith("/scenario")
                else "invalid_request")
        return _error(400, code, "request failed validation",
                      {"errors": exc.errors()})

    @app.exception_handler(RepweightsError)
    async def _on_domain_error(request: Request, exc: RepweightsError):
        if isinstance(exc, DataError):
            return _error(404, "not_found", str(exc))
        if isinstance(exc, (ScenarioError, ApportionmentError, MetricsError,
                            HarmonizationError)):
            return _error(422, "scenario_unbuildable", str(exc))
        return _error(500, "internal_error", str(exc))

    def require_dataset() -> Dataset:
        if not holder.loaded:
            raise _NotLoaded()
        return holder.dataset

    @app.exception_handler(_NotLoaded)
    async def _on_not_loaded(request: Request, exc: "_NotLoaded"):
        return _error(503, "loading", "dataset not loaded yet")

    @app.exception_handler(_BadParameter)
    async def _on_bad_parameter(request: Request, exc: "_BadParameter"):
        return _error(400, exc.code, str(exc))

    @app.get("/api/v1/health")
    async def health():
        if not holder.loaded:
            return _error(503, "loading", "dataset not loaded yet")
        ds = holder.dataset
        return {
            "status": "ok",
            "version": __version__,
            "census_years": list(ds.years()),
            "variables": {str(y): list(ds.variables(y)) for y in ds.years()},
        }

    @app.get("/api/v1/metrics")
    async def get_metrics(year: int, variable: str, body: str = "all",
                          baseline: str = "with_dc"):
        ds = require_dataset()
        bodies = _parse_bodies(body)
        variant = _parse_baseline(baseline)
        if variable not in VARIABLES:
            return _error(400, "unknown_variable",
                          f"unknown variable {variable!r}",
                          {"choices": list(VARIABLES)})
        if year not in ds.years() or not ds.has_table(variable, year):
            return _error(404, "not_found",
                          f"no {variable} data for year {year}")
        scenario = Scenario(baseline_variant=variant)
        rows = []
        for b in bodies:
            rows.extend(metrics.compute_metrics(ds, variable, b, year, scenario))
        return {
            "year": year, "variable": variable, "body": body,
            "baseline": variant.value,
            "rows": [report.row_to_dict(r) for r in rows],
        }

    @app.post("/api/v1/scenario")
    async def post_scenario(req: ScenarioRequest):
        ds = require_dataset()
        bodies = _parse_bodies(req.body)
        if req.variable not in VARIABLES:
            return _error(400, "unknown_variable",
                          f"unknown variable {req.variable!r}",
                          {"choices": list(VARIABLES)})
        try:
            scenario = scenario_from_dict({
                "baseline_variant": req.baseline_variant,
                "elector_award_method": req.elector_award_method,
                "house_seat_total": req.house_seat_total,
                "apportionment_source": req.apportionment_source,
            })
        except ScenarioError as exc:
            return _error(400, "invalid_scenario", str(exc))
        if req.year not in ds.years() or not ds.has_table(req.variable, req.year):
            return _error(404, "not_found",
                          f"no {req.variable} data for year {req.year}")

        rows = []
        allocations = {}
        for b in bodies:
            allocation = apportion.build_allocation(ds, b, req.year, scenario)
            rows.extend(metrics.compute_metrics(
                ds, req.variable, b, req.year, scenario, allocation=allocation))
            summary = {
                "total_votes": allocation.total_votes,
                "assumptions": list(allocation.assumptions),
            }
            if b is Body.HOUSE:
                summary["seats"] = _seats_by_state(ds, allocation)
            allocations[b.value] = summary
        return {
            "year": req.year, "variable": req.variable, "body": req.body,
            "baseline": scenario.baseline_variant.value,
            "rows": [report.row_to_dict(r) for r in rows],
            "allocations": allocations,
        }

    @app.get("/api/v1/trends")
    async def get_trends(years: str, variable: str, baseline: str = "with_dc"):
        ds = require_dataset()
        variant = _parse_baseline(baseline)
        if variable not in VARIABLES:
            return _error(400, "unknown_variable",
                          f"unknown variable {variable!r}",
                          {"choices": list(VARIABLES)})
        try:
            year_list = [int(y) for y in years.split(",") if y.strip()]
        except ValueError:
            return _error(400, "invalid_years",
                          f"years must be comma-separated integers, got {years!r}")
        if not year_list:
            return _error(400, "invalid_years", "no years requested")
        scenario = Scenario(baseline_variant=variant)
        series = trends.compute_trends(ds, year_list, variable, scenario)
        return report.figure_data("trends_fig3", series,
                                  baseline_variant=variant.value)

    @app.get("/api/v1/units")
    async def get_units(year: int, body: str, baseline: str = "with_dc"):
        ds = require_dataset()
        variant = _parse_baseline(baseline)
        bodies = _parse_bodies(body)
        if len(bodies) != 1:
            return _error(400, "unknown_body",
                          "unit weights require one body (house, senate, ec)")
        if year not in ds.years():
            return _error(404, "not_found", f"no data for year {year}")
        allocation = apportion.build_allocation(ds, bodies[0], year)
        weights = apportion.unit_weight(ds, allocation, variant)
        return {
            "year": year, "body": bodies[0].value, "baseline": variant.value,
            "units": [{"unit_id": u, "weight": w}
                      for u, w in sorted(weights.items())],
        }

    return app


class _NotLoaded(Exception):
    pass


class _BadParameter(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _parse_bodies(value: str) -> list[Body]:
    if value == "all":
        return [Body.HOUSE, Body.SENATE, Body.EC]
    try:
        return [Body(value)]
    except ValueError:
        raise _BadParameter(
            "unknown_body",
            f"unknown body {value!r}; choices: {', '.join(BODY_CHOICES)}",
        ) from None


def _parse_baseline(value: str) -> BaselineVariant:
    try:
        return BaselineVariant(value.replace("-", "_"))
    except ValueError:
        choices = ", ".join(v.value for v in BaselineVariant)
        raise _BadParameter(
            "unknown_baseline",
            f"unknown baseline {value!r}; choices: {choices}",
        ) from None


def _seats_by_state(dataset: Dataset, allocation) -> dict[str, int]:
    seats: dict[str, int] = {}
    for unit_id, votes in allocation.votes.items():
        source = dataset.unit(allocation.census_year,
                              allocation.source_of(unit_id))
        if source.unit_kind in (UnitKind.STATE, UnitKind.DISTRICT):
            seats[source.state_code] = seats.get(source.state_code, 0) + votes
    return dict(sorted(seats.items()))
