import os
import sys

import numpy as np
import pytest

# Ensure project root is importable
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from ddqe.centralspin import CentralSpinParams  # noqa: E402
from ddqe.dirac import CorrelatorSpec  # noqa: E402
from ddqe.ensemble import random_discrete_ensemble  # noqa: E402
from ddqe.qcore import KET_DOWN, KET_UP, RngStream, pure_state  # noqa: E402


@pytest.fixture
def rng():
    return RngStream(1234)


@pytest.fixture
def plus_state():
    """(|up> + |down>)/sqrt(2), the equatorial qubit state."""
    return pure_state((KET_UP + KET_DOWN) / np.sqrt(2.0))


@pytest.fixture
def down_state():
    return pure_state(KET_DOWN)


@pytest.fixture
def central_params():
    return CentralSpinParams(omega=1.0, delta_sq_mean=0.2**2)


@pytest.fixture
def qutrit_ensemble():
    return random_discrete_ensemble(3, 4, RngStream(5))


@pytest.fixture
def correlator():
    return CorrelatorSpec(c0=0.04, ell=1.0)


@pytest.fixture
def minimal_config_text():
    return 'scenario = "central-spin"\nseed = 7\n\n[central-spin]\ncase = "iii"\nK = 20\nn_points = 41\n'
