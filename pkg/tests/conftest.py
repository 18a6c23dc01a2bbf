import random

import pytest

from floerlocal.sampling import seed_from_env


@pytest.fixture
def rnd():
    return random.Random(seed_from_env())


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
