"""
Processor implementations for the HSAC job system.

This module contains processors for training runs and gradient checks.
"""

from ..jobs.enums import JobType
from ..jobs.factory import JobFactory
from .gradcheck import GradcheckJobProcessor
from .training import TrainingRunJobProcessor


def register_processors() -> None:
    """Register the processor of every job type with the factory"""
    JobFactory.register_processor(JobType.TRAINING_RUN, TrainingRunJobProcessor())
    JobFactory.register_processor(JobType.GRADCHECK, GradcheckJobProcessor())


__all__ = ["GradcheckJobProcessor", "TrainingRunJobProcessor", "register_processors"]
