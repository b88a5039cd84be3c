import pytest

from pweil.cyclo import CycloField
from pweil.splitting import split_prime
from pweil.weilgroup import build_weil_basis


@pytest.fixture(scope="session")
def k5():
    return CycloField(5)


@pytest.fixture(scope="session")
def split_5_11(k5):
    return split_prime(k5, 11)


@pytest.fixture(scope="session")
def basis_5_11(split_5_11):
    return build_weil_basis(split_5_11)


@pytest.fixture(scope="session")
def k8():
    return CycloField(8)


@pytest.fixture(scope="session")
def split_8_5(k8):
    return split_prime(k8, 5)


@pytest.fixture(scope="session")
def basis_8_5(split_8_5):
    return build_weil_basis(split_8_5)
