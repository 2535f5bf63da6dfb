import pytest

from t3mcg.mesh import build_surface
from t3mcg.mesh.homology import build_homology
from t3mcg.rep6 import derive_table


@pytest.fixture(scope="session")
def mesh16():
    return build_surface(16)


@pytest.fixture(scope="session")
def mesh32():
    return build_surface(32)


@pytest.fixture(scope="session")
def homology16(mesh16):
    return build_homology(mesh16)


@pytest.fixture(scope="session")
def homology32(mesh32):
    return build_homology(mesh32)


@pytest.fixture(scope="session")
def table32(homology32):
    return derive_table(homology32)
