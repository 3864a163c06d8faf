import os
import random

import pytest
from hypothesis import HealthCheck, settings

from qrt.catalog import catalog
from qrt.exactfield import GF, QQ

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("QRT_HYPOTHESIS", "default"))


@pytest.fixture(scope="session")
def kron():
    return catalog("Kronecker", QQ)


@pytest.fixture(scope="session")
def c222():
    return catalog("CanonicalAlgebra(2,2,2)", QQ)


@pytest.fixture(scope="session")
def c2222():
    return catalog("CanonicalAlgebra(2,2,2,2;2)", QQ)


@pytest.fixture(scope="session")
def c2222_f3():
    return catalog("CanonicalAlgebra(2,2,2,2)", GF(3), lambdas=[2])


@pytest.fixture
def rng():
    return random.Random(12345)
