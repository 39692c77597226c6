import numpy as np
import pytest
from hypothesis import settings

from crossing_cycles import builtin_config
from helpers import ACCEPTANCE_LINES

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")



def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def examples():
    return {case: builtin_config(case) for case in ("q1", "q2", "q3", "q4")}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
