# tests/conftest.py
import os
import sys

import numpy as np
import pytest

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
src_path = os.path.join(project_root, 'src')
if src_path not in sys.path: sys.path.insert(0, src_path)
config_dir = os.path.join(project_root, 'config')
if config_dir not in sys.path: sys.path.insert(0, config_dir)
scripts_dir = os.path.join(project_root, 'scripts')
if scripts_dir not in sys.path: sys.path.insert(0, scripts_dir)

from simulators.params import SimParams  # noqa: E402


@pytest.fixture
def small_params():
    """Short, cheap runs at the default drive and decay."""
    return SimParams(omega=1.0, gamma=1.0, coupling=0.0, dt=0.01, steps=2000, n_traj=8, seed=42,
                     sample_stride=10)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
