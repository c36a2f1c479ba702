"""
Job kinds the harness schedules and their lifecycle states.
"""

from enum import Enum


class JobType(Enum):
    """A single training run of one grid cell, or a batch of gradient checks"""

    TRAINING_RUN = "training_run"
    GRADCHECK = "gradcheck"

    @classmethod
    def from_string(cls, value: str) -> "JobType":
        """
        Parse a job type name; "training-run" and "Training_Run" both work

        Raises:
            ValueError: If the name is not a known job type
        """
        normalized = value.strip().lower().replace("-", "_")
        try:
            return cls(normalized)
        except ValueError:
            valid_types = ", ".join(t.value for t in cls)
            raise ValueError(f"Invalid job type: '{value}'. Valid types are: {valid_types}")


class JobStatus(Enum):
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"

    def is_terminal(self) -> bool:
        return self in (JobStatus.COMPLETED, JobStatus.FAILED)
