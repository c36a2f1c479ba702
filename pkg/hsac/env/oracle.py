"""
Exact expected returns on the augmented chain (position x visited_goal).

The history-dependent reward becomes Markovian once the visited bit is
part of the state. Policies are tables P(right | position, visited) of
shape (n_g, 2); column 0 is "not visited", column 1 is "visited".
Expected undiscounted terminal reward is obtained by a linear solve over
the transient states; the optimum by policy iteration on top of it.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ConfigurationError
from .sdp import EARLY_EXIT_REWARD, GOAL_REWARD, START_POSITION, EnvConfig

logger = logging.getLogger("hsac")


@dataclass(frozen=True)
class OracleSolution:
    """Optimal values and a deterministic optimal policy"""

    values: np.ndarray  # (n_g + 1, 2), row 0 unused, row 1 terminal
    policy: np.ndarray  # (n_g, 2) P(right), row i is position i + 1
    iterations: int

    @property
    def start_value(self) -> float:
        return float(self.values[START_POSITION, 0])


def _state_index(n_g: int, position: int, visited: int) -> int:
    # transient states are positions 2..n_g
    return (position - 2) * 2 + visited


def _transition_system(config: EnvConfig, policy: np.ndarray):
    """Build (I - P) and expected immediate reward b over transient states"""
    n_g = config.n_g
    size = (n_g - 1) * 2
    matrix = np.eye(size)
    rewards = np.zeros(size)

    for position in range(2, n_g + 1):
        for visited in (0, 1):
            row = _state_index(n_g, position, visited)
            p_right = float(policy[position - 1, visited])
            # (probability, next position) pairs
            moves = [
                (1.0 - p_right, position - 1),
                (0.5 * p_right, min(position + 1, n_g)),
                (0.5 * p_right, position - 1),
            ]
            for prob, nxt in moves:
                if prob == 0.0:
                    continue
                next_visited = 1 if (visited or nxt == n_g) else 0
                if nxt == 1:
                    rewards[row] += prob * (GOAL_REWARD if next_visited else EARLY_EXIT_REWARD)
                else:
                    matrix[row, _state_index(n_g, nxt, next_visited)] -= prob
    return matrix, rewards


def _values_table(config: EnvConfig, transient: np.ndarray) -> np.ndarray:
    values = np.zeros((config.n_g + 1, 2))
    for position in range(2, config.n_g + 1):
        for visited in (0, 1):
            values[position, visited] = transient[_state_index(config.n_g, position, visited)]
    return values


def _normalize_policy(config: EnvConfig, policy: np.ndarray) -> np.ndarray:
    table = np.asarray(policy, dtype=np.float64)
    if table.shape == (config.n_g,):
        table = np.repeat(table[:, None], 2, axis=1)
    if table.shape != (config.n_g, 2):
        raise ConfigurationError(
            f"Policy must have shape ({config.n_g},) or ({config.n_g}, 2), got {table.shape}"
        )
    if np.any(table < 0.0) or np.any(table > 1.0):
        raise ConfigurationError("Policy entries are probabilities of moving right")
    return table


def evaluate_policy(config: EnvConfig, policy: np.ndarray) -> np.ndarray:
    """
    Expected terminal reward from every augmented state under a fixed policy

    Every policy terminates with probability 1 (a right move fails half of
    the time), so the linear system is always nonsingular.

    Returns:
        Value table of shape (n_g + 1, 2) indexed by [position, visited]
    """
    table = _normalize_policy(config, policy)
    matrix, rewards = _transition_system(config, table)
    return _values_table(config, np.linalg.solve(matrix, rewards))


def _greedy_policy(config: EnvConfig, values: np.ndarray) -> np.ndarray:
    n_g = config.n_g
    policy = np.zeros((n_g, 2))

    def worth(nxt: int, visited: int) -> float:
        next_visited = 1 if (visited or nxt == n_g) else 0
        if nxt == 1:
            return GOAL_REWARD if next_visited else EARLY_EXIT_REWARD
        return float(values[nxt, next_visited])

    for position in range(2, n_g + 1):
        for visited in (0, 1):
            left = worth(position - 1, visited)
            right = 0.5 * worth(min(position + 1, n_g), visited) + 0.5 * left
            # ties keep the left move, which terminates sooner
            policy[position - 1, visited] = 1.0 if right > left + 1e-12 else 0.0
    return policy


def solve_augmented_chain(config: EnvConfig, max_iterations: int = 1000) -> OracleSolution:
    """
    Policy iteration with exact evaluation

    Returns:
        Optimal value table and greedy policy
    """
    policy = np.zeros((config.n_g, 2))
    for iteration in range(1, max_iterations + 1):
        values = evaluate_policy(config, policy)
        improved = _greedy_policy(config, values)
        if np.array_equal(improved, policy):
            logger.debug(
                f"[Oracle] n_g={config.n_g} converged after {iteration} iterations"
            )
            return OracleSolution(values, policy, iteration)
        policy = improved
    raise RuntimeError(f"Policy iteration did not converge in {max_iterations} iterations")


def optimal_return_oracle(config: EnvConfig, policy: Optional[np.ndarray] = None) -> float:
    """
    Expected undiscounted episode reward from the start state

    Args:
        config: Environment configuration
        policy: Optional fixed policy (P(right) table); the optimum over
            policies is returned when omitted

    Returns:
        Expected terminal reward starting from s_2 with the goal unvisited
    """
    if policy is None:
        return solve_augmented_chain(config).start_value
    return float(evaluate_policy(config, policy)[START_POSITION, 0])
