from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from periodlab.arb import PrecisionPolicy
from periodlab.relations import TableSet

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# one line per acceptance criterion, printed once at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def tables():
    return TableSet(1, use_cache=False)


@pytest.fixture(scope="session")
def tables2():
    return TableSet(2, use_cache=False)


@pytest.fixture(scope="session")
def policy():
    return PrecisionPolicy(30)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("PERIODLAB_CACHE_DIR", str(tmp_path / "cache"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
