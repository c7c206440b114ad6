import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Record the one-line verdict of an acceptance criterion."""
    def record(number: int, passed: bool, detail: str):
        ACCEPTANCE[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'} ({detail})"
        print(ACCEPTANCE[number])
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
