import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def bclr():
    from borderrank.catalog import load_entry

    return load_entry("bclr")


@pytest.fixture(scope="session")
def as3():
    from borderrank.catalog import load_entry

    return load_entry("as3")


@pytest.fixture(scope="session")
def m422():
    from borderrank.catalog import load_entry

    return load_entry("m422")


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if not LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(LINES):
        terminalreporter.write_line(LINES[n])
