"""
Factory for creating jobs and processors.
"""

import uuid
from typing import Any, Dict

from .base import GradcheckJob, Job, JobProcessor, TrainingRunJob
from .enums import JobType


class JobFactory:
    """Factory for creating appropriate job types and processors"""

    # Registry of job processors by job type
    processors: Dict[JobType, JobProcessor] = {}

    @classmethod
    def register_processor(cls, job_type: JobType, processor: JobProcessor) -> None:
        """
        Register a processor for a job type

        Args:
            job_type: Type of job
            processor: Processor implementation
        """
        cls.processors[job_type] = processor

    @classmethod
    def create_job(cls, job_type: JobType, **params: Any) -> Job:
        """
        Create a job of the specified type

        Args:
            job_type: Type of job to create
            **params: Payload of the job type; training runs take variant,
                n_g, seed_index, run_seed, config and optionally alpha
                and tau_gumbel; gradient checks take instances and seed

        Returns:
            A new job instance of the appropriate type

        Raises:
            ValueError: If the job type is unknown or the payload incomplete
        """
        job_id = uuid.uuid4().hex

        try:
            if job_type == JobType.TRAINING_RUN:
                return TrainingRunJob(
                    job_id,
                    params["variant"],
                    params["n_g"],
                    params["seed_index"],
                    params["run_seed"],
                    params["config"],
                    alpha=params.get("alpha"),
                    tau_gumbel=params.get("tau_gumbel"),
                )
            elif job_type == JobType.GRADCHECK:
                return GradcheckJob(job_id, params["instances"], params["seed"])
        except KeyError as e:
            raise ValueError(f"Missing parameter for {job_type.value} job: {e.args[0]}")
        raise ValueError(f"Unknown job type: {job_type}")

    @classmethod
    def get_processor(cls, job_type: JobType) -> JobProcessor:
        """
        Get the processor for a job type

        Raises:
            ValueError: If no processor is registered for the job type
        """
        processor = cls.processors.get(job_type)
        if not processor:
            raise ValueError(f"No processor registered for job type: {job_type}")
        return processor
