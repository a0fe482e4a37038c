"""Pytest configuration and fixtures."""

import json

import numpy as np
import pytest

from config.settings import ToleranceConfig, config
from services.logger import setup_logging


@pytest.fixture(scope="session", autouse=True)
def setup_test_environment():
    """Set up test environment before running tests."""
    # Reduce log noise during tests
    setup_logging(level="WARNING")
    yield


@pytest.fixture
def tol():
    """Default tolerance set."""
    return ToleranceConfig()


@pytest.fixture
def rng():
    """Seeded generator so every random test is reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def write_matrix(tmp_path):
    """Write a matrix in the JSON matrix format and return its path."""

    def _write(a, name="a.json"):
        arr = np.asarray(a, dtype=np.complex128)
        doc = {
            "rows": int(arr.shape[0]),
            "cols": int(arr.shape[1]),
            "entries": [[float(z.real), float(z.imag)] for z in arr.reshape(-1)],
        }
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def small_suite_config():
    """A verify configuration small enough for unit tests."""
    return config.suite_config(seed=7, trials=4, max_dim=3)
