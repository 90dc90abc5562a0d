import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hjflab.suites import clear_cache  # noqa: E402

PREC = 40


@pytest.fixture(scope="session")
def prec():
    return PREC


@pytest.fixture(autouse=True, scope="session")
def _fresh_cache():
    clear_cache()
    yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
