# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

from pathlib import Path

import pytest
from contact_spectra.model import (
    exceptional_example,
    half_turn_example,
    higher_dimensional_example,
    hopf_example,
)

MANIFEST_DIR = Path(__file__).resolve().parent.parent / "manifests"


def pytest_configure(config):
    """Configure custom markers."""
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests (deselect with '-m \"not integration\"')"
    )
    config.addinivalue_line(
        "markers", "acceptance: marks tests as acceptance tests for CI/CD (core functionality validation)"
    )


@pytest.fixture
def manifest_dir() -> Path:
    return MANIFEST_DIR


@pytest.fixture
def hopf():
    """Hopf fibration with trivial rank-1 holonomy and kappa_1 = 1."""
    return hopf_example()


@pytest.fixture
def half_turn():
    return half_turn_example()


@pytest.fixture
def exceptional():
    """Order-3 exceptional fiber, k = 1."""
    return exceptional_example()


@pytest.fixture
def higher_dimensional():
    """k = 2 with an order-2 exceptional fiber."""
    return higher_dimensional_example()
