import os

import pytest
from hypothesis import HealthCheck, settings
from mpmath import mp

settings.register_profile("default", max_examples=30, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def _reset_mp():
    # references are computed at the library's working precision plus guard
    saved = mp.dps
    mp.dps = 60
    yield
    mp.dps = saved


def close(a, b, rel):
    """|a - b| <= rel * max(|a|, |b|, tiny)."""
    scale = max(abs(a), abs(b), mp.mpf(10) ** -300)
    return abs(a - b) <= rel * scale


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
