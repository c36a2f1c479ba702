"""
Test for the gradient-check processor.
"""

import asyncio

from hsac.jobs.base import GradcheckJob
from hsac.jobs.enums import JobStatus
from hsac.processors.gradcheck import GradcheckJobProcessor


def test_gradcheck_processor_process():
    """Test that the processor runs the finite-difference suite."""
    job = GradcheckJob(job_id="test-job-1", instances=2, seed=0)

    asyncio.run(GradcheckJobProcessor().process(job))

    assert job.status == JobStatus.COMPLETED
    assert job.report is not None
    result = job.result
    assert result["instances"] == 2
    assert result["passed"] is True
    assert "controller_policy_mi" in result["max_errors"]


def test_gradcheck_processor_failure():
    """Invalid parameters fail the job instead of raising."""
    job = GradcheckJob(job_id="test-job-2", instances=1, seed=-1)

    asyncio.run(GradcheckJobProcessor().process(job))

    assert job.status == JobStatus.FAILED
    assert job.error.startswith("Error processing job")
