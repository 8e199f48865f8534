"""Session fixtures: each scenario is derived once and its report shared."""

import pytest

from vortexsym.scenarios import run_kite, run_rectangle, run_square, run_trapezoid


@pytest.fixture(scope="session")
def square_report():
    return run_square()


@pytest.fixture(scope="session")
def kite_report():
    return run_kite()


@pytest.fixture(scope="session")
def rectangle_report():
    return run_rectangle()


@pytest.fixture(scope="session")
def trapezoid_report():
    return run_trapezoid(check_appendix=True)
