import pytest

from cycbase.oracle import generate_corpus


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: takes more than a few seconds; kept in the "
        "default run, deselect with -m 'not slow'")


@pytest.fixture(scope="session")
def tiny_corpus():
    return generate_corpus("tiny")


@pytest.fixture(scope="session")
def full_corpus():
    return generate_corpus("full")
