import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# criterion number -> (title, passed, detail), filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[num]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] C{num:<2} {title}: {detail}")


@pytest.fixture(scope="session")
def functionals():
    from tcont import corpus

    return corpus.functionals()


@pytest.fixture(scope="session")
def all_programs():
    from tcont import corpus

    return corpus.load_all()
