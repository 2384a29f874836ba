import pytest

from cpdd.numsim import build_model


@pytest.fixture(scope="session")
def model2():
    return build_model(2, 1.0, 1.0, 42)


@pytest.fixture(scope="session")
def model3():
    return build_model(3, 1.0, 1.0, 42)


@pytest.fixture(scope="session")
def model4():
    return build_model(4, 1.0, 1.0, 42)
