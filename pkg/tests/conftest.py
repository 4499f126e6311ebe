import pytest

from cdsverify.menon import build_menon_system


@pytest.fixture(scope="session")
def system():
    return build_menon_system()
