import pytest

_acceptance_results = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num, title): acceptance criterion with a summary line"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        marker = item.get_closest_marker("criterion")
        if marker:
            num, title = marker.args
            _acceptance_results[num] = (title, rep.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance_results):
        title, passed = _acceptance_results[num]
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{word} criterion {num}: {title}")
