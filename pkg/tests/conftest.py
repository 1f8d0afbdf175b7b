import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import datagen  # noqa: E402


@pytest.fixture
def two_state():
    return datagen.two_state_dataset()


@pytest.fixture
def uniform():
    return datagen.uniform_dataset()


@pytest.fixture(scope="session")
def national():
    return datagen.national_dataset()


@pytest.fixture(scope="session")
def national_dir(tmp_path_factory, national):
    """Extract directory holding the 2020-shaped fixture."""
    data_dir = tmp_path_factory.mktemp("extracts")
    (data_dir / "national_2020.csv").write_bytes(
        datagen.dataset_to_extract(national))
    return data_dir


@pytest.fixture(scope="session")
def multi_year():
    """Three census years: 2000 state-level, 2010/2020 with districts."""
    return datagen.merge_datasets(
        datagen.state_level_dataset(2000, seed=41, n_states=8),
        datagen.national_dataset(2010, seed=42),
        datagen.national_dataset(2020, seed=43),
    )


# One visible pass/fail line per acceptance criterion at the end of a run.
_acceptance_reports = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid:
        if report.when == "call" or report.outcome == "skipped":
            _acceptance_reports[report.nodeid] = report


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_reports:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_acceptance_reports):
        report = _acceptance_reports[nodeid]
        name = nodeid.split("::")[-1]
        if report.outcome == "skipped" and "data-gated" in str(report.longrepr):
            status = "SKIPPED (data-gated)"
        else:
            status = report.outcome.upper()
        terminalreporter.write_line(f"{status:<22} {name}")
