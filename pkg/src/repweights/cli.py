"""Command-line entry point: validate, metrics, trends, serve.

Exit codes: 0 success, 1 domain violation in the data, 2 usage or
environment error. Output is deterministic byte-for-byte for fixed
inputs.
"""

from __future__ import annotations

import json
import socket
import sys
from pathlib import Path

import click

from . import metrics, report, trends
from .errors import RepweightsError, ScenarioError
from .ingest import load_dataset, parse_extract
from .model import (
    Body,
    CENSUS_YEARS,
    Dataset,
    Scenario,
    VARIABLES,
    scenario_from_dict,
)
from .validation import validate_dataset

BASELINE_CHOICES = ("with-dc", "without-dc", "with-dc-and-pr")
BODY_CHOICES = ("house", "senate", "ec", "all")


@click.group()
def main():
    """Representation-distortion metrics for U.S. federal bodies."""


def _load_dir(data_dir: str | None) -> Dataset:
    if not data_dir:
        raise click.UsageError(
            "no data directory; pass --data-dir or set ELEC_DATA_DIR")
    path = Path(data_dir)
    if not path.is_dir():
        raise click.UsageError(f"data directory {path} does not exist")
    paths = sorted(path.glob("*.csv"))
    if not paths:
        raise click.UsageError(f"no extract files (*.csv) in {path}")
    dataset = load_dataset(paths)
    vreport = validate_dataset(dataset.units, dataset.tables)
    if not vreport.ok:
        click.echo(vreport.summary(), err=True)
        raise SystemExit(1)
    return dataset


def _write(data: bytes, out: str | None):
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _scenario(scenario_file: str | None, baseline: str) -> Scenario:
    fields = {}
    if scenario_file:
        try:
            fields = json.loads(Path(scenario_file).read_text(encoding="utf-8"))
        except OSError as exc:
            raise click.UsageError(f"cannot read scenario file: {exc}")
        except json.JSONDecodeError as exc:
            raise click.UsageError(f"scenario file is not valid JSON: {exc}")
        if not isinstance(fields, dict):
            raise click.UsageError("scenario file must hold a JSON object")
    fields.setdefault("baseline_variant", baseline)
    try:
        return scenario_from_dict(fields)
    except ScenarioError as exc:
        raise click.UsageError(str(exc))


@main.command()
@click.argument("paths", nargs=-1, required=True,
                type=click.Path(path_type=Path))
def validate(paths):
    """Parse and validate extract files; exit 0 only when clean."""
    all_units, all_tables = [], []
    for path in paths:
        try:
            with open(path, "rb") as fh:
                units, tables = parse_extract(fh)
        except OSError as exc:
            click.echo(f"{path}: unreadable: {exc}", err=True)
            raise SystemExit(2)
        except RepweightsError as exc:
            click.echo(f"{path}: {exc}", err=True)
            raise SystemExit(1)
        all_units.extend(units)
        all_tables.extend(tables)
    vreport = validate_dataset(all_units, all_tables)
    click.echo(vreport.summary())
    raise SystemExit(0 if vreport.ok else 1)


@main.command("metrics")
@click.option("--data-dir", envvar="ELEC_DATA_DIR",
              help="Directory of extract *.csv files (env: ELEC_DATA_DIR).")
@click.option("--year", type=int, required=True)
@click.option("--variable", type=click.Choice(VARIABLES), required=True)
@click.option("--body", type=click.Choice(BODY_CHOICES), default="all",
              show_default=True)
@click.option("--baseline", type=click.Choice(BASELINE_CHOICES),
              default="with-dc", show_default=True)
@click.option("--scenario-file", type=click.Path(exists=False),
              help="JSON scenario overriding defaults.")
@click.option("--format", "fmt", type=click.Choice(("text", "csv", "json")),
              default="text", show_default=True)
@click.option("--out", help="Write output here instead of stdout.")
def metrics_cmd(data_dir, year, variable, body, baseline, scenario_file,
                fmt, out):
    """Render the metrics table for one year/variable slice."""
    dataset = _load_dir(data_dir)
    scenario = _scenario(scenario_file, baseline)
    bodies = ([Body.HOUSE, Body.SENATE, Body.EC] if body == "all"
              else [Body(body)])
    try:
        rows = []
        for b in bodies:
            rows.extend(metrics.compute_metrics(dataset, variable, b, year,
                                                scenario))
        _write(report.render_table(rows, fmt), out)
    except RepweightsError as exc:
        raise click.UsageError(str(exc))


@main.command("trends")
@click.option("--data-dir", envvar="ELEC_DATA_DIR",
              help="Directory of extract *.csv files (env: ELEC_DATA_DIR).")
@click.option("--years", default="2000,2010,2020", show_default=True,
              help="Comma-separated census years.")
@click.option("--variable", type=click.Choice(VARIABLES), required=True)
@click.option("--baseline", type=click.Choice(BASELINE_CHOICES),
              default="with-dc", show_default=True)
@click.option("--format", "fmt", type=click.Choice(("json", "csv")),
              default="json", show_default=True)
@click.option("--out", help="Write output here instead of stdout.")
def trends_cmd(data_dir, years, variable, baseline, fmt, out):
    """Emit harmonized absolute-weight series across census years."""
    try:
        year_list = [int(y) for y in years.split(",") if y.strip()]
    except ValueError:
        raise click.UsageError(f"--years must be comma-separated integers, "
                               f"got {years!r}")
    bad = [y for y in year_list if y not in CENSUS_YEARS]
    if bad or not year_list:
        raise click.UsageError(
            f"unsupported years {bad or years!r}; choices: {CENSUS_YEARS}")

    dataset = _load_dir(data_dir)
    scenario = _scenario(None, baseline)
    try:
        series = trends.compute_trends(dataset, year_list, variable, scenario)
    except RepweightsError as exc:
        raise click.UsageError(str(exc))

    if fmt == "json":
        doc = report.figure_data("trends_fig3", series,
                                 baseline_variant=scenario.baseline_variant.value)
        _write((json.dumps(doc, indent=2) + "\n").encode("utf-8"), out)
    else:
        lines = ["variable,body,category,year,aw"]
        for s in series:
            for year, aw in s.points:
                aw_s = "" if aw is None else repr(aw)
                lines.append(f"{s.variable},{s.body.value},{s.category_code},"
                             f"{year},{aw_s}")
        _write(("\r\n".join(lines) + "\r\n").encode("utf-8"), out)


@main.command("serve")
@click.option("--data-dir", envvar="ELEC_DATA_DIR",
              help="Directory of extract *.csv files (env: ELEC_DATA_DIR).")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8400, show_default=True)
def serve_cmd(data_dir, host, port):
    """Serve the HTTP API over the loaded dataset."""
    import uvicorn

    from .service import create_app

    dataset = _load_dir(data_dir)

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        raise click.UsageError(f"cannot bind {host}:{port}: {exc}")
    finally:
        probe.close()

    def announce():
        click.echo(f"serving on http://{host}:{port}/api/v1", err=False)
        sys.stdout.flush()

    app = create_app(dataset=dataset, on_ready=announce)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
