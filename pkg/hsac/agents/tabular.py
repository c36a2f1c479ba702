"""
Tabular Q-learning on the augmented chain (position x visited_goal).

Used to cross-check the exact oracle: the visited bit makes the reward
Markovian, so plain Q-learning recovers an optimal policy.
"""

import logging

import numpy as np

from ..env.sdp import Action, EnvConfig, reset, step
from ..errors import ConfigurationError

logger = logging.getLogger("hsac")


class TabularQLearner:
    """Epsilon-greedy, undiscounted by default, Q[position, visited, action]"""

    def __init__(
        self,
        config: EnvConfig,
        rng: np.random.Generator,
        learning_rate: float = 0.1,
        gamma: float = 1.0,
        epsilon: float = 0.1,
    ):
        if not 0.0 < learning_rate <= 1.0:
            raise ConfigurationError(f"learning_rate must be in (0, 1], got {learning_rate}")
        if not 0.0 <= epsilon <= 1.0:
            raise ConfigurationError(f"epsilon must be in [0, 1], got {epsilon}")
        self.config = config
        self.rng = rng
        self.learning_rate = learning_rate
        self.gamma = gamma
        self.epsilon = epsilon
        self.q = np.zeros((config.n_g + 1, 2, len(Action)))

    def _choose(self, position: int, visited: int) -> int:
        if self.rng.random() < self.epsilon:
            return int(self.rng.integers(len(Action)))
        return int(np.argmax(self.q[position, visited]))

    def run_episode(self) -> float:
        """One learning episode; returns its external reward"""
        state = reset(self.config)
        while True:
            visited = int(state.visited_goal)
            action = self._choose(state.position, visited)
            outcome = step(self.config, state, action, self.rng)
            nxt = outcome.next_state
            # the step cap is not part of the process being learned
            if outcome.done and not outcome.truncated:
                bootstrap = 0.0
            else:
                bootstrap = float(self.q[nxt.position, int(nxt.visited_goal)].max())
            target = outcome.external_reward + self.gamma * bootstrap
            cell = (state.position, visited, action)
            self.q[cell] += self.learning_rate * (target - self.q[cell])
            if outcome.done:
                return outcome.external_reward
            state = nxt

    def train(self, episodes: int) -> np.ndarray:
        """Run episodes and return their rewards"""
        rewards = np.array([self.run_episode() for _ in range(episodes)])
        logger.debug(
            f"[Tabular] n_g={self.config.n_g} trained {episodes} episodes, mean reward {rewards.mean():.4f}"
        )
        return rewards

    def greedy_policy(self) -> np.ndarray:
        """P(right) table of shape (n_g, 2); ties go left"""
        values = self.q[1:]
        return (values[..., Action.RIGHT] > values[..., Action.LEFT]).astype(np.float64)
