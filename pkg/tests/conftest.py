import pytest

_RESULTS = []


@pytest.fixture
def detail():
    """Free-form measurements a criterion test wants echoed in its summary line."""
    return {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    failed_setup = rep.when == "setup" and not rep.passed
    if rep.when == "call" or failed_setup:
        info = item.funcargs.get("detail") or {}
        text = ", ".join(f"{k}={v}" for k, v in info.items())
        _RESULTS.append((marker.args[0], marker.args[1], rep.passed, text))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, text in sorted(_RESULTS, key=lambda r: (r[0], r[1])):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}"
        terminalreporter.write_line(line + (f"  [{text}]" if text else ""))
