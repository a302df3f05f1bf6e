import re
from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("repo", derandomize=True, deadline=None, print_blob=True)
settings.load_profile("repo")

PROBLEMS = Path(__file__).resolve().parents[1] / "src" / "defectless" / "problems"

_acceptance: dict[str, str] = {}


@pytest.fixture
def problems() -> Path:
    return PROBLEMS


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = f"{int(m.group(1))}: {m.group(2).replace('_', ' ')}"
    if report.when == "call" or report.outcome != "passed":
        if _acceptance.get(key) != "FAIL":
            _acceptance[key] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance, key=lambda k: int(k.split(":")[0])):
        terminalreporter.write_line(f"{_acceptance[key]}  criterion {key}")
