import pytest

from steinerkit.fixtures import fixture


@pytest.fixture(scope="session")
def fano_part():
    return fixture("fano")[0]


@pytest.fixture(scope="session")
def fano(fano_part):
    return fano_part.design


@pytest.fixture(scope="session")
def sqs8_part():
    return fixture("sqs8")[0]


@pytest.fixture(scope="session")
def sts13_parts():
    return fixture("sts13-both")


@pytest.fixture(scope="session")
def rosqs46_part():
    return fixture("rosqs46")[0]


@pytest.fixture(scope="session")
def rosqs92_part():
    return fixture("rosqs92")[0]


@pytest.fixture(scope="session")
def s3642_part():
    return fixture("s3-6-42")[0]
