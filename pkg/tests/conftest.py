import pytest

from omegalab import omega_profile


@pytest.fixture(scope="session")
def profile_1e4():
    return omega_profile(10**4)


@pytest.fixture(scope="session")
def profile_1e6():
    return omega_profile(10**6, workers=4)


@pytest.fixture(scope="session")
def profile_1e8():
    return omega_profile(10**8, workers=8)
