"""
Test for the training-run processor.
"""

import asyncio

from hsac.agents.enums import AgentVariant
from hsac.jobs.base import TrainingRunJob
from hsac.jobs.enums import JobStatus
from hsac.processors.training import TrainingRunJobProcessor
from hsac.utils.seeding import derive_run_seed


def test_training_processor_initialization():
    """Test that the training processor can be initialized."""
    processor = TrainingRunJobProcessor()
    assert processor is not None


def test_training_processor_process(small_config):
    """Test that the processor runs one seeded training run."""
    run_seed = derive_run_seed(0, "hdqn", 3, 0)
    job = TrainingRunJob("test-job-1", AgentVariant.HDQN, 3, 0, run_seed, small_config)

    asyncio.run(TrainingRunJobProcessor().process(job))

    assert job.status == JobStatus.COMPLETED
    assert job.run is not None
    assert len(job.run.rows) == small_config.episodes_per_run
    result = job.result
    assert result is not None
    assert result["variant"] == "hdqn"
    assert result["run_seed"] == run_seed
    assert result["status"] == "completed"
    assert result["episodes"] == small_config.episodes_per_run
    assert job.execution_time is not None


def test_training_processor_missing_config():
    """A job without a config fails instead of raising."""
    job = TrainingRunJob("test-job-2", AgentVariant.HDQN, 3, 0, 1, None)

    asyncio.run(TrainingRunJobProcessor().process(job))

    assert job.status == JobStatus.FAILED
    assert "missing" in job.error
    assert job.run is None


def test_training_job_dict(small_config):
    job = TrainingRunJob("test-job-3", AgentVariant.MI_SAC, 3, 2, 99, small_config)
    info = job.to_dict()
    assert info["job_type"] == "training_run"
    assert info["status"] == "pending"
    assert (info["variant"], info["ng"], info["seed"], info["run_seed"]) == ("mi_sac", 3, 2, 99)
    assert job.label == "[training_run:test-job-3]"
