import pytest

from antshop import load_bundled


@pytest.fixture(scope="session")
def toy():
    return load_bundled("toy2x2")


@pytest.fixture(scope="session")
def ft06():
    return load_bundled("ft06")


@pytest.fixture(scope="session")
def la01():
    return load_bundled("la01")
