from functools import lru_cache

from hypothesis import HealthCheck, settings

from hkmonoid.rewrite import hk_table

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# filled by test_acceptance; echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def table(g):
    return hk_table(g)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
