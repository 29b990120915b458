from __future__ import annotations

import pytest

from wilsoncodes.qc import purge_cycles
from wilsoncodes.sparse import SparseParity
from wilsoncodes.wilson import build_wilson


@pytest.fixture(scope="session")
def wilson_qc11():
    """Four-cycle-free lifting of W_{2,10,4} with circulant size 11."""
    return purge_cycles(build_wilson(2, 10, 4), 11, rng_seed=0)


@pytest.fixture(scope="session")
def wilson_qc11_parity(wilson_qc11):
    return SparseParity.from_exponent(wilson_qc11)


# -- acceptance reporting ----------------------------------------------------------------

_criteria: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            verdict = "KNOWN-FAIL" if report.skipped else "PASS"
        else:
            verdict = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _criteria.setdefault(number, (title, []))[1].append(verdict)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, verdicts = _criteria[number]
        for worst in ("FAIL", "KNOWN-FAIL", "SKIP", "PASS"):
            if worst in verdicts:
                break
        label = "FAIL (known, see notes)" if worst == "KNOWN-FAIL" else worst
        terminalreporter.write_line(f"criterion {number:>2}: {label:<24} {title}")
