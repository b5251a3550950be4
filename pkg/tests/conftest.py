"""Shared fixtures for the seqjordan test-suite."""
import numpy as np
import pytest

from seqjordan import DEFAULT_ZOO

ZOO = tuple(DEFAULT_ZOO)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=ZOO)
def zoo_desc(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
