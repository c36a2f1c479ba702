"""
Direct integration test for the HSAC MCP server.

This test drives the job manager the server uses, and inspects the
server's tool registry.
"""

import asyncio

import pytest

from hsac.agents.enums import AgentVariant
from hsac.jobs.enums import JobStatus, JobType
from hsac.jobs.manager import JobManager
from hsac.server import create_server
from hsac.utils.seeding import derive_run_seed


async def wait_for(job, timeout=60.0):
    """Poll until the job is terminal"""
    waited = 0.0
    while not job.status.is_terminal() and waited < timeout:
        await asyncio.sleep(0.05)
        waited += 0.05
    return job


@pytest.mark.asyncio
async def test_training_run_job(job_manager, small_config):
    """Test submitting a training run."""
    job = job_manager.submit_job(
        JobType.TRAINING_RUN,
        variant=AgentVariant.ADVERSARIAL_MI_SAC,
        n_g=3,
        seed_index=0,
        run_seed=derive_run_seed(0, "adversarial_mi_sac", 3, 0),
        config=small_config,
    )

    # Verify the job was created
    assert job.id is not None, "No job ID assigned"
    assert job.job_type == JobType.TRAINING_RUN, "Wrong job type"

    await wait_for(job)
    job = job_manager.get_job(job.id)

    assert job.status.value == "completed", "Job did not complete"
    assert job.result["status"] == "completed"
    assert job.result["final_moving_avg"] is not None


@pytest.mark.asyncio
async def test_gradcheck_job(job_manager):
    """Test submitting a gradient check."""
    job = job_manager.submit_job(JobType.GRADCHECK, instances=1, seed=5)
    await wait_for(job)

    assert job.status == JobStatus.COMPLETED, "Job did not complete"
    assert "max_errors" in job.result


@pytest.mark.asyncio
async def test_job_listing(job_manager):
    """Test listing jobs."""
    jobs = job_manager.list_jobs()
    assert len(jobs) > 0, "No jobs found"
    assert all(j["job_type"] == "gradcheck" for j in job_manager.list_jobs(JobType.GRADCHECK))

    stats = job_manager.get_stats()
    assert "by_status" in stats, "No status stats returned"
    assert "by_type" in stats, "No type stats returned"
    assert stats["workers"] == 2


@pytest.mark.asyncio
async def test_worker_limit(small_config):
    """At most `workers` jobs run at the same time."""
    manager = JobManager(workers=1)
    jobs = [
        manager.submit_job(
            JobType.TRAINING_RUN,
            variant=AgentVariant.HDQN,
            n_g=3,
            seed_index=seed,
            run_seed=derive_run_seed(0, "hdqn", 3, seed),
            config=small_config,
        )
        for seed in range(3)
    ]
    peak = 0
    while any(not job.status.is_terminal() for job in jobs):
        peak = max(peak, sum(job.status == JobStatus.RUNNING for job in jobs))
        await asyncio.sleep(0.01)
    await manager.wait_all()

    assert peak <= 1
    assert all(job.status == JobStatus.COMPLETED for job in jobs)
    assert len(manager.job_history) == 3


def test_unknown_job_parameters(job_manager):
    with pytest.raises(ValueError):
        job_manager.submit_job(JobType.GRADCHECK, instances=1)


def test_job_type_parsing():
    assert JobType.from_string("TRAINING_RUN") is JobType.TRAINING_RUN
    assert JobType.from_string(" training-run ") is JobType.TRAINING_RUN
    with pytest.raises(ValueError, match="Valid types"):
        JobType.from_string("lint")


@pytest.mark.asyncio
async def test_server_tools():
    """The server exposes the harness tools."""
    server = create_server()
    assert server.name == "HSAC"
    names = {tool.name for tool in await server.list_tools()}
    assert names == {"submit_training_run", "submit_gradcheck", "get_job_results", "list_jobs", "oracle_values"}
