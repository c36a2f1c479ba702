"""
Experiment harness: configuration, seeded runs, metrics and summaries.
"""

from .config import ExperimentConfig, apply_overrides, load_config, parse_config_text
from .gradcheck_suite import GradcheckReport, run_gradient_suite
from .metrics import MetricRow, RunRecord, SummaryRow, moving_average, summarize
from .runner import ExperimentOutcome, RunResult, execute_training_run, run_experiment, run_experiment_sync

__all__ = [
    "ExperimentConfig",
    "ExperimentOutcome",
    "GradcheckReport",
    "MetricRow",
    "RunRecord",
    "RunResult",
    "SummaryRow",
    "apply_overrides",
    "execute_training_run",
    "load_config",
    "moving_average",
    "parse_config_text",
    "run_experiment",
    "run_experiment_sync",
    "run_gradient_suite",
    "summarize",
]
