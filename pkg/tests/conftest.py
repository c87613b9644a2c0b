import numpy as np
import pytest

from gptcone.fixtures import DIMS_22, appendix_measurement, appendix_states
from gptcone.dovm import Dovm


@pytest.fixture(scope="session")
def dims22():
    return DIMS_22


@pytest.fixture(scope="session")
def e_pair():
    return appendix_measurement()


@pytest.fixture(scope="session")
def e_dovm(e_pair):
    e1, e2 = e_pair
    return Dovm(m1=e1, m2=e2, dims=DIMS_22)


@pytest.fixture(scope="session")
def entropy_quartet():
    return appendix_states()


@pytest.fixture(scope="session")
def bell_state():
    v = np.array([1.0, 0, 0, 1.0], dtype=complex) / np.sqrt(2.0)
    return np.outer(v, v.conj())
