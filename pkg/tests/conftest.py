import math

import numpy as np
import pytest
from hypothesis import settings

import pingpong as pp

settings.register_profile("suite", deadline=None, max_examples=50)
settings.load_profile("suite")


@pytest.fixture
def counterexample():
    return pp.builtin_attack("counterexample")


@pytest.fixture
def identity_attack():
    return pp.builtin_attack("identity")


@pytest.fixture
def simplified_config():
    return pp.make_config("simplified")


@pytest.fixture
def bell_config():
    return pp.make_config("bell")


@pytest.fixture
def plus_config():
    w = math.sqrt(0.5)
    return pp.make_config("simplified", bob_initial=pp.StateVector(np.array([w, w])))
