"""
Test fixtures for the application.
"""
from pathlib import Path

import pytest

from app.config.settings import Settings
from app.services.corpus import build
from app.services.tangle_complex import KhComplex

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def settings():
    """Create test settings."""
    return Settings(LOG_LEVEL="DEBUG", JOBS=1, VERIFY=False)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def unknot_complex():
    return KhComplex(build("unknot"))


@pytest.fixture(scope="session")
def trefoil_complex():
    return KhComplex(build("trefoil_right"))


@pytest.fixture(scope="session")
def ladybug_complex():
    return KhComplex(build("ladybug"))


@pytest.fixture(scope="session")
def identity_complex():
    return KhComplex(build("identity"))


@pytest.fixture(scope="session")
def kinked_unlink():
    """RII unlink next to a disjoint kink: a 3-cube with a ladybug face at 000 and at 001."""
    return build("kinked_unlink")
