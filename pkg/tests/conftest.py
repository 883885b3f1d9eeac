import pytest
from hypothesis import HealthCheck, settings

from superdenom.lattice import build_root_system

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.load_profile("default")


@pytest.fixture(params=[("gl", 1), ("gl", 2), ("gl", 3), ("d", 1), ("d", 2)], ids=lambda p: f"{p[0]}{p[1]}")
def small_rs(request):
    return build_root_system(*request.param)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
