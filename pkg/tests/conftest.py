import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("dds", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("dds")

_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def case_q1():
    from dds import pipeline as pl
    return pl.get_case("scarf-q1")


@pytest.fixture(scope="session")
def case_q2():
    from dds import pipeline as pl
    return pl.get_case("scarf-q2")


@pytest.fixture(scope="session")
def acceptance_run():
    """One full acceptance run shared by every test that needs it."""
    from dds import pipeline as pl
    results, reports = pl.run_acceptance()
    _ACCEPTANCE.update({r.number: r for r in results})
    return dict(_ACCEPTANCE), reports


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[n].line())
