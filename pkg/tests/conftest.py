import numpy as np
import pytest

from wilksbound import new_model


@pytest.fixture
def binary():
    return new_model([0.4, 0.6])


@pytest.fixture
def ternary():
    return new_model([0.25, 0.25, 0.5])


def random_theta(rng: np.random.Generator, r: int, floor: float = 0.0) -> np.ndarray:
    p = rng.dirichlet(np.ones(r + 1)) + floor
    return p / p.sum()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)
