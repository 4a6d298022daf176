import pytest

from ntkrkhs import ExtractionConfig

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def cfg():
    return ExtractionConfig()


@pytest.fixture(scope="session")
def cfg_256():
    return ExtractionConfig(max_order=256)


@pytest.fixture
def report_line():
    def record(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
