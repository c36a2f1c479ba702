"""
Processor for training-run jobs.
"""

import asyncio
import logging
import time

from ..experiment.runner import execute_training_run
from ..jobs.base import JobProcessor, TrainingRunJob
from ..jobs.enums import JobStatus

logger = logging.getLogger("hsac")


class TrainingRunJobProcessor(JobProcessor):
    """Runs one seeded training run in a worker thread"""

    async def process(self, job: TrainingRunJob) -> None:
        """
        Process a training-run job

        A diverged run still completes the job: its partial rows and the
        failure marker are part of the result. The job fails only when the
        run cannot be executed at all.

        Args:
            job: The training-run job to process
        """
        job.status = JobStatus.RUNNING
        job.started_at = time.time()
        logger.info(
            f"{job.label} Starting training run "
            f"({job.variant.value if job.variant else None}, ng={job.n_g}, seed={job.seed_index})"
        )

        try:
            if job.variant is None or job.config is None:
                raise ValueError("Training run job is missing its variant or config")
            run = await asyncio.to_thread(
                execute_training_run,
                job.variant,
                job.n_g,
                job.seed_index,
                job.config,
                job.run_seed,
                job.alpha,
                job.tau_gumbel,
            )
            job.run = run
            job.result = run.to_dict()
            job.status = JobStatus.COMPLETED
            logger.info(f"{job.label} Run {run.record.status} after {run.record.episodes} episodes")
        except Exception as e:
            logger.error(f"{job.label} Error processing job: {str(e)}", exc_info=True)
            job.status = JobStatus.FAILED
            job.error = f"Error processing job: {str(e)}"
        finally:
            job.completed_at = time.time()
