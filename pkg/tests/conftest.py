import pytest
from fastapi.testclient import TestClient

from lorentzvol.main import app
from lorentzvol.schemas.volume import PrecisionContext


@pytest.fixture(scope="module")
def ctx():
    return PrecisionContext(mantissa_bits=256)


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c
