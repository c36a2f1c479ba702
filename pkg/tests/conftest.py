"""
Pytest configuration for HSAC tests.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path to import hsac module
sys.path.insert(0, str(Path(__file__).parent.parent))

from hsac.agents.hyperparams import Hyperparams
from hsac.experiment.config import ExperimentConfig
from hsac.jobs.manager import JobManager
from hsac.processors import register_processors

# Register processors for testing
register_processors()

# Set asyncio mode
pytest_plugins = ["pytest_asyncio"]


@pytest.fixture(scope="session")
def job_manager():
    """Create a job manager for testing."""
    return JobManager(workers=2)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def small_hp():
    """Tiny networks and batches so agents train in milliseconds."""
    return Hyperparams(
        hidden_width=8,
        batch_size=4,
        buffer_capacity=200,
        learning_rate=1e-3,
        epsilon_decay_steps=100,
    )


@pytest.fixture
def small_config(tmp_path, small_hp):
    """A one-cell-per-variant grid writing into a temporary directory."""
    return ExperimentConfig(
        ng_values=(3,),
        seeds=1,
        episodes_per_run=5,
        window=3,
        output_dir=str(tmp_path / "results"),
        hyperparams=small_hp,
    )
