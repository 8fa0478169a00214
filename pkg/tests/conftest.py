import pytest

# acceptance lines collected by tests/test_acceptance.py, echoed at session end
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def conformal():
    from planimetric import ConformalDomain
    return ConformalDomain((0.2,))
