import os
import sys

_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, _ROOT)

import numpy as np
import pytest

from src.design.gains import PAPER_GAINS, assemble_gain_matrix
from src.vehicle.params import VehicleParams


@pytest.fixture
def params():
    return VehicleParams()


@pytest.fixture
def reference_matrix():
    return assemble_gain_matrix(PAPER_GAINS)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
