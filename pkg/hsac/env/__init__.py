"""
The stochastic decision process and its exact oracle.
"""

from .oracle import OracleSolution, evaluate_policy, optimal_return_oracle, solve_augmented_chain
from .sdp import Action, EnvConfig, EnvState, StepOutcome, TraceWriter, goal_reached, reset, step

__all__ = [
    "Action",
    "EnvConfig",
    "EnvState",
    "OracleSolution",
    "StepOutcome",
    "TraceWriter",
    "evaluate_policy",
    "goal_reached",
    "optimal_return_oracle",
    "reset",
    "solve_augmented_chain",
    "step",
]
