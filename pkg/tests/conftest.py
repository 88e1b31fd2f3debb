import pytest

_RESULTS: dict[str, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        state = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _RESULTS.setdefault(mark.args[0], []).append(state)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS, key=lambda s: int(s.split()[0][2:])):
        states = _RESULTS[label]
        verdict = "FAIL" if "FAIL" in states else ("SKIP" if "SKIP" in states else "PASS")
        terminalreporter.write_line(f"{verdict}  {label}")
