"""
Pytest configuration and fixtures for pd-schauder tests.

Standard pairs, small basis configurations and a seeded generator.
Everything runs in-process; no external services.
"""

import numpy as np
import pytest

from src.basis import BasisConfig
from src.geometry import mixup_pair, persistence_plane, signed_barcode_pair
from src.triangulation import TriangulationConfig


@pytest.fixture
def plane():
    return persistence_plane()


@pytest.fixture
def mixup():
    return mixup_pair()


@pytest.fixture
def barcode2():
    return signed_barcode_pair(2)


@pytest.fixture
def tri(plane):
    return TriangulationConfig(plane, 2)


@pytest.fixture
def plain_config(plane):
    """Plain basis, L_n = 2^-n, layers 0..3, window |x|_inf <= 4."""
    return BasisConfig.build(plane, 2, None, 3, 4)


@pytest.fixture
def stacked_config(plane):
    """Stacked basis, layers 0..4, window |x|_inf <= 4."""
    return BasisConfig.build(plane, 2, None, 4, 4, "stacked")


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def write_text(tmp_path):
    """Write a text file under tmp_path and return its path as a string."""

    def _write(name: str, content: str) -> str:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)

    return _write
