from pathlib import Path

import pytest

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "uci"


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def iris_path():
    path = DATA_DIR / "iris.csv"
    if not path.is_file():
        pytest.skip("iris.csv not exported (run scripts/export_sklearn_datasets.py)")
    return path


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
