import pytest
from fastapi.testclient import TestClient
from ncmckay.api import app

@pytest.fixture
def client():
    return TestClient(app)

@pytest.fixture
def config():
    from ncmckay.config import load_config
    cfg = load_config()
    cfg['verification']['workers'] = 1
    cfg['verification']['phi_samples'] = 3
    cfg['verification']['phi_degree'] = 2
    cfg['verification']['solver_samples'] = 5
    return cfg
