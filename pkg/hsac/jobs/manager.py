"""
Job management system for asynchronous processing.
"""

import asyncio
import logging
from collections import deque
from typing import Any, Deque, Dict, List, Optional

from .base import Job, JobProcessor
from .enums import JobType

logger = logging.getLogger("hsac")


class JobManager:
    """
    Manages asynchronous jobs of any type

    The manager is responsible for:
    1. Creating jobs via the factory
    2. Starting background tasks for processing, at most `workers` at once
    3. Tracking job status and history
    4. Providing access to job results
    """

    def __init__(self, max_history: int = 100, workers: int = 1):
        """
        Initialize a new job manager

        Args:
            max_history: Maximum number of completed jobs to keep in history
            workers: Maximum number of jobs processed concurrently
        """
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self.jobs: Dict[str, Job] = {}  # job_id -> Job
        self.job_history: Deque[Job] = deque(maxlen=max_history)
        self.active_tasks: Dict[str, asyncio.Task] = {}  # job_id -> asyncio.Task
        self.workers = workers
        self._slots: Optional[asyncio.Semaphore] = None
        self._slots_loop: Optional[asyncio.AbstractEventLoop] = None

    def _semaphore(self) -> asyncio.Semaphore:
        # one semaphore per event loop
        loop = asyncio.get_running_loop()
        if self._slots is None or self._slots_loop is not loop:
            self._slots = asyncio.Semaphore(self.workers)
            self._slots_loop = loop
        return self._slots

    def submit_job(self, job_type: JobType, **params: Any) -> Job:
        """
        Submit a new job for processing

        Must be called from a running event loop; processing starts in
        the background and waits for a free worker slot.

        Args:
            job_type: Type of job to create
            **params: Job payload, see JobFactory.create_job

        Returns:
            The newly created job instance
        """
        # Import here to avoid circular imports
        from .factory import JobFactory

        job = JobFactory.create_job(job_type, **params)
        self.jobs[job.id] = job

        processor = JobFactory.get_processor(job_type)
        task = asyncio.create_task(self._process_job(job, processor))
        self.active_tasks[job.id] = task
        logger.debug(f"{job.label} Submitted")
        return job

    async def _process_job(self, job: Job, processor: JobProcessor) -> None:
        """Process a job once a worker slot is free, then move it to history"""
        try:
            async with self._semaphore():
                await processor.process(job)
        finally:
            if job.status.is_terminal():
                self.job_history.append(job)
                if job.id in self.active_tasks:
                    del self.active_tasks[job.id]

    async def wait_all(self) -> None:
        """Wait until every submitted job has finished"""
        while self.active_tasks:
            await asyncio.gather(*list(self.active_tasks.values()), return_exceptions=True)

    def get_job(self, job_id: str) -> Optional[Job]:
        """
        Get a job by ID

        Returns:
            The job if found, None otherwise
        """
        return self.jobs.get(job_id)

    def list_jobs(self, job_type: Optional[JobType] = None) -> List[Dict[str, Any]]:
        """
        List all jobs, optionally filtered by type

        Returns:
            List of job dictionaries
        """
        return [
            job.to_dict()
            for job in self.jobs.values()
            if job_type is None or job.job_type == job_type
        ]

    def get_stats(self) -> Dict[str, Any]:
        """
        Get statistics about jobs

        Returns:
            Dictionary with job statistics
        """
        by_status: Dict[str, int] = {}
        by_type: Dict[str, int] = {}

        for job in self.jobs.values():
            by_status[job.status.value] = by_status.get(job.status.value, 0) + 1
            by_type[job.job_type.value] = by_type.get(job.job_type.value, 0) + 1

        return {
            "total_jobs": len(self.jobs),
            "by_status": by_status,
            "by_type": by_type,
            "workers": self.workers,
        }
