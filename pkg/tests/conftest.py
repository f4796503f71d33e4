import os

import pytest
from hypothesis import HealthCheck, settings

from supermacdonald.scalars import ParamSet

settings.register_profile("repo", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

@pytest.fixture(scope="session")
def exact_params():
    return ParamSet.default()


@pytest.fixture(scope="session")
def float_params():
    return ParamSet.default().to_float()


def pytest_configure(config):
    config.acceptance_lines = {}


@pytest.fixture
def record(request):
    """Store one acceptance line: record(key, passed, message)."""
    def put(key, ok, msg):
        request.config.acceptance_lines[key] = (ok, msg)
    return put


def pytest_terminal_summary(terminalreporter, config):
    lines = config.acceptance_lines
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines, key=lambda k: (int(k.split("-")[0]), k)):
        ok, msg = lines[key]
        label = "INFO" if ok is None else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"criterion {key}: {label}  {msg}")
