"""
Base classes for jobs and processors.
"""

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Dict, Optional, TypeVar

from .enums import JobStatus, JobType

if TYPE_CHECKING:
    from ..agents.enums import AgentVariant
    from ..experiment.config import ExperimentConfig
    from ..experiment.gradcheck_suite import GradcheckReport
    from ..experiment.runner import RunResult


@dataclass
class Job(ABC):
    """Base class for all asynchronous jobs"""

    id: str
    status: JobStatus
    job_type: JobType
    submitted_at: float
    started_at: Optional[float] = None
    completed_at: Optional[float] = None
    result: Optional[Dict[str, Any]] = None
    error: Optional[str] = None

    @property
    def execution_time(self) -> Optional[float]:
        """
        Calculate execution time if available

        Returns:
            Execution time in seconds, or None if not completed
        """
        if self.completed_at and self.started_at:
            return self.completed_at - self.started_at
        return None

    @property
    def label(self) -> str:
        """Log prefix of this job"""
        return f"[{self.job_type.value}:{self.id}]"

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert job to dictionary for API responses

        Returns:
            Dictionary representation of the job
        """
        return {
            "job_id": self.id,
            "job_type": self.job_type.value,
            "status": self.status.value,
            "submitted_at": self.submitted_at,
            "started_at": self.started_at,
            "completed_at": self.completed_at,
            "execution_time": self.execution_time,
            "has_result": self.result is not None,
            "has_error": self.error is not None,
        }


T = TypeVar("T", bound=Job)


class JobProcessor(ABC):
    """
    Abstract base class defining how processors should handle jobs.

    The processor is responsible for:
    1. Setting job.status to RUNNING and job.started_at when processing begins
    2. On success, setting job.result and job.status to COMPLETED
    3. On failure, setting job.error and job.status to FAILED
    4. Setting job.completed_at when processing ends

    The job manager takes care of job creation, concurrency limits and history.
    """

    @abstractmethod
    async def process(self, job: T) -> None:
        """
        Process a job and update its state.

        The processor should handle all exceptions internally and
        update the job status to FAILED if processing cannot complete.
        """


@dataclass
class TrainingRunJob(Job):
    """
    One (variant, n_g, alpha, tau, seed) training run of an experiment grid

    alpha and tau_gumbel default to the values in config.hyperparams.
    """

    variant: Optional["AgentVariant"] = None
    n_g: int = 0
    seed_index: int = 0
    run_seed: int = 0
    config: Optional["ExperimentConfig"] = None
    alpha: Optional[float] = None
    tau_gumbel: Optional[float] = None
    run: Optional["RunResult"] = None

    def __init__(
        self,
        job_id: str,
        variant: "AgentVariant",
        n_g: int,
        seed_index: int,
        run_seed: int,
        config: "ExperimentConfig",
        alpha: Optional[float] = None,
        tau_gumbel: Optional[float] = None,
    ):
        super().__init__(
            id=job_id,
            status=JobStatus.PENDING,
            job_type=JobType.TRAINING_RUN,
            submitted_at=time.time(),
        )
        self.variant = variant
        self.n_g = n_g
        self.seed_index = seed_index
        self.run_seed = run_seed
        self.config = config
        self.alpha = alpha
        self.tau_gumbel = tau_gumbel
        self.run = None

    def to_dict(self) -> Dict[str, Any]:
        info = super().to_dict()
        info.update(
            {
                "variant": self.variant.value if self.variant else None,
                "ng": self.n_g,
                "seed": self.seed_index,
                "run_seed": self.run_seed,
                "alpha": self.alpha,
                "tau_gumbel": self.tau_gumbel,
            }
        )
        return info


@dataclass
class GradcheckJob(Job):
    """Finite-difference verification of the agent objectives"""

    instances: int = 0
    seed: int = 0
    report: Optional["GradcheckReport"] = None

    def __init__(self, job_id: str, instances: int, seed: int):
        super().__init__(
            id=job_id,
            status=JobStatus.PENDING,
            job_type=JobType.GRADCHECK,
            submitted_at=time.time(),
        )
        self.instances = instances
        self.seed = seed
        self.report = None
