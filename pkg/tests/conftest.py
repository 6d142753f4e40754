import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from rpac.construction import construct_profile, profile_from_info_set

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

WORKED_INFO = (31, 46, 47, 51, 53, 54, 55, 57, 58, 59, 60, 61, 62, 63)
RM_16_INFO = (7, 11, 13, 14, 15)
FROZEN_64_50 = (0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 17, 32)
FROZEN_128_110 = (0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 17, 18, 20, 32, 33, 64)


@pytest.fixture(scope="session")
def worked_profile():
    return profile_from_info_set(64, WORKED_INFO)


@pytest.fixture(scope="session")
def rm16_profile():
    return profile_from_info_set(16, RM_16_INFO)


@pytest.fixture(scope="session")
def profile_64_50():
    return construct_profile(64, 50, 2.0)


@pytest.fixture(scope="session")
def profile_128_110():
    return construct_profile(128, 110, 2.0)


# -- acceptance report -------------------------------------------------------

ACCEPTANCE = {}


@pytest.fixture
def record():
    """``record(criterion, ok, detail)`` stores one line for the summary."""

    def _record(criterion, ok, detail):
        ACCEPTANCE[criterion] = (ok, detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")
