import functools

import pytest

from isoschubert.bgg_oracle import run_oracle


@functools.lru_cache(maxsize=None)
def oracle(n: int):
    return run_oracle(n, full=True)


@pytest.fixture(scope="session")
def oracle3():
    return oracle(3)


@pytest.fixture(scope="session")
def oracle4():
    return oracle(4)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split("criterion")[1].split()[0])):
            terminalreporter.write_line(line)
