import random

import pytest
from hypothesis import settings

settings.register_profile("k3", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("k3")


@pytest.fixture
def rng():
    return random.Random(7)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    # surface the acceptance lines even when output capture is on
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
