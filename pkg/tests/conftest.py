from pathlib import Path

import pytest

from normexp.core import validate_argumentation_theory
from normexp.io import load_theory

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def credit_text() -> str:
    return (DATA / "credit.dfl").read_text()


@pytest.fixture(scope="session")
def credit(credit_text):
    return validate_argumentation_theory(load_theory(credit_text))


@pytest.fixture(scope="session")
def credit_path() -> str:
    return str(DATA / "credit.dfl")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
