import pytest

from helpers import cached_context


@pytest.fixture(scope="session")
def poincare4():
    return cached_context("poincare-null-plane")


@pytest.fixture(scope="session")
def poincare5():
    return cached_context("poincare-null-plane", 5)


@pytest.fixture(scope="session")
def jordanian6():
    return cached_context("jordanian-borel")


@pytest.fixture(scope="session")
def jordanian3():
    return cached_context("jordanian-borel", 3)


@pytest.fixture(scope="session")
def shift3():
    return cached_context("shift-ring(3)")
