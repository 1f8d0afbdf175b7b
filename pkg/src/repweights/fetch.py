"""Minimal HTTP client for pulling extract files from a remote service.

The client speaks plain GET with the ``get``/``for``/``in`` query
convention used by the Census API; the adapter table below maps our
variable names onto the summary-table tokens a conforming endpoint
expects. The endpoint is expected to answer with extract-formatted CSV
(see ``repweights.ingest``). Tests run against a local stub, never a
live service.
"""

from __future__ import annotations

import requests

from .errors import DataError, FetchError, TransportError
from .model import CENSUS_YEARS

# variable -> census year -> summary-table token sent as the `get` param.
ADAPTER_TABLE = {
    "race_ethnicity": {2000: "P004", 2010: "P5", 2020: "P2"},
    "age_category": {2000: "P012", 2010: "P12", 2020: "P12"},
    "sex": {2000: "P012", 2010: "P12", 2020: "P12"},
    "rural_urban": {2000: "P002", 2010: "P2", 2020: "H2"},
    "housing_status": {2000: "H004", 2010: "H4", 2020: "H4"},
}

DEFAULT_TIMEOUT = 30.0


def query_params(variable: str, census_year: int,
                 geography: str = "state:*",
                 within: str | None = None) -> dict[str, str]:
    """Census-style query parameters for one variable/year/geography."""
    try:
        token = ADAPTER_TABLE[variable][census_year]
    except KeyError:
        raise DataError(
            f"no adapter entry for ({variable!r}, {census_year}); "
            f"years supported: {CENSUS_YEARS}") from None
    params = {"get": token, "for": geography}
    if within:
        params["in"] = within
    return params


def fetch_extract(endpoint: str, variable: str, census_year: int,
                  geography: str = "state:*", within: str | None = None,
                  timeout: float = DEFAULT_TIMEOUT) -> bytes:
    """GET one extract from the endpoint; returns the raw body bytes.

    Network-level failures raise TransportError (marked retryable);
    non-2xx responses raise FetchError carrying the status and a body
    excerpt.
    """
    params = query_params(variable, census_year, geography, within)
    try:
        response = requests.get(endpoint, params=params, timeout=timeout)
    except requests.RequestException as exc:
        raise TransportError(f"fetch from {endpoint} failed: {exc}") from exc
    if not (200 <= response.status_code < 300):
        raise FetchError(response.status_code, response.text)
    return response.content
