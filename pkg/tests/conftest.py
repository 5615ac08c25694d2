"""General support functions and fixtures for the tests.

This is a PyTest special file, see its documentation.
"""
import logging

import numpy as np
import pytest

from gaussdens.density.calculator import DensityCalculator
from gaussdens.flow.curve_flow import evolve
from gaussdens.geometry.shapes import circle, ellipse


log_format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
logging.basicConfig(level=logging.INFO, format=log_format)


@pytest.fixture
def unit_circle():
    """A regular 256-gon on the unit circle."""
    return circle(1.0, 256)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture(scope='session')
def density():
    return DensityCalculator()


@pytest.fixture(scope='session')
def circle_flow():
    """The unit circle evolved into its singularity.

    A frame is recorded at t = 0.25, where the radius is sqrt(1/2).
    """
    return evolve(circle(1.0, 256), record_times=[0.25])


@pytest.fixture(scope='session')
def large_circle_flow():
    """The circle of radius 2 evolved into its singularity."""
    return evolve(circle(2.0, 256))


@pytest.fixture(scope='session')
def ellipse_flow():
    """The 2:1 ellipse evolved into its singularity.

    A frame is recorded at t = 0.1 for breather tests.
    """
    return evolve(ellipse(2.0, 1.0, 512), record_times=[0.1])
