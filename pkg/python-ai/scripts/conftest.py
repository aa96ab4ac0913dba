"""pytest fixtures shared by the olrwa tests."""

import sys
from pathlib import Path

import numpy as np
import pytest

SCRIPTS_DIR = Path(__file__).parent
sys.path.insert(0, str(SCRIPTS_DIR.parent))
sys.path.insert(0, str(SCRIPTS_DIR))

from olrwa.regression_core import DataBatch  # noqa: E402


@pytest.fixture(scope="session")
def global_seed():
    """Seed for every randomized test in the session."""
    return 7


@pytest.fixture
def rng(global_seed):
    return np.random.default_rng(global_seed)


@pytest.fixture
def noisy_plane(global_seed):
    """120 points around y = 3 + 2·x₁ − 0.5·x₂ with unit Gaussian noise."""
    rng = np.random.default_rng(global_seed)
    features = rng.uniform(-10, 10, size=(120, 2))
    targets = 3.0 + features @ np.array([2.0, -0.5]) + rng.standard_normal(120)
    return DataBatch(features, targets)


@pytest.fixture
def write_csv(tmp_path):
    """Write text to a CSV file under tmp_path and return its path as str."""
    def _write(text: str, name: str = "data.csv") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def linear_csv(write_csv, global_seed):
    """80-row CSV with columns a, b, noise_free and y = 1 + 2a − b + noise."""
    rng = np.random.default_rng(global_seed)
    a = rng.uniform(0, 50, 80)
    b = rng.uniform(0, 20, 80)
    y = 1.0 + 2.0 * a - b + rng.normal(0, 2.0, 80)
    lines = ["a,b,noise_free,y"]
    lines += [f"{ai:.6f},{bi:.6f},{1 + 2 * ai - bi:.6f},{yi:.6f}" for ai, bi, yi in zip(a, b, y)]
    return write_csv("\n".join(lines) + "\n", "linear.csv")
