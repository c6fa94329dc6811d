import time

import pytest

from ladm.solver import DEFAULT_BETA, kundu_eckhaus, run

BETA = DEFAULT_BETA


@pytest.fixture(scope="session")
def model():
    return kundu_eckhaus()


@pytest.fixture(scope="session")
def example_run(model):
    return run(model, BETA, 1, 4)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    n, title = marker.args
    results = item.config._criteria
    passed, _ = results.get(n, (True, title))
    if report.failed:
        passed = False
    results[n] = (passed, title)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        passed, title = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {title}")
    elapsed = getattr(config, "_elapsed", None)
    if elapsed is not None:
        terminalreporter.write_line(f"suite runtime {elapsed:.2f} s (budget {SUITE_BUDGET_S:.0f} s)")


SUITE_BUDGET_S = 10.0


def pytest_sessionstart(session):
    session.config._t0 = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - session.config._t0
    session.config._elapsed = elapsed
    results = session.config._criteria
    if 8 in results and elapsed >= SUITE_BUDGET_S:
        results[8] = (False, results[8][1] + f" [suite took {elapsed:.1f} s]")
        session.exitstatus = 1
