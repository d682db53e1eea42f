import pytest


def pytest_configure(config):
    config._criterion_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def report(request):
    """Record one pass/fail line per acceptance criterion and assert it."""

    def _report(num, passed, detail):
        verdict = "PASS" if passed else "FAIL"
        line = f"criterion {num:2d}: {verdict} - {detail}"
        request.config._criterion_lines.append(line)
        print(line)
        assert passed, line

    return _report
