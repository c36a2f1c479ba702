"""
Processor for gradient-check jobs.
"""

import asyncio
import logging
import time

from ..experiment.gradcheck_suite import run_gradient_suite
from ..jobs.base import GradcheckJob, JobProcessor
from ..jobs.enums import JobStatus

logger = logging.getLogger("hsac")


class GradcheckJobProcessor(JobProcessor):
    """Runs the finite-difference suite in a worker thread"""

    async def process(self, job: GradcheckJob) -> None:
        job.status = JobStatus.RUNNING
        job.started_at = time.time()
        logger.info(f"{job.label} Starting gradient suite ({job.instances} instances, seed={job.seed})")

        try:
            report = await asyncio.to_thread(run_gradient_suite, job.instances, job.seed)
            job.report = report
            job.result = report.to_dict()
            job.status = JobStatus.COMPLETED
            logger.info(f"{job.label} Gradient suite finished, passed={report.passed}")
        except Exception as e:
            logger.error(f"{job.label} Error processing job: {str(e)}", exc_info=True)
            job.status = JobStatus.FAILED
            job.error = f"Error processing job: {str(e)}"
        finally:
            job.completed_at = time.time()
