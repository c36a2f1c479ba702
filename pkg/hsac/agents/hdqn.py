"""
Hierarchical DQN baseline: epsilon-greedy Q-learning at both levels.
"""

from typing import Dict

import numpy as np

from ..autodiff.mlp import Head, MlpParams, evaluate, init_mlp
from ..env.sdp import EnvState
from .base import NUM_ACTIONS, HierarchicalAgent, TrainLosses
from .enums import AgentVariant
from .objectives import controller_q_update, meta_q_update
from .replay import ControllerBatch, MetaBatch


def hdqn_controller_targets(
    rewards: np.ndarray, q_next: np.ndarray, cut: np.ndarray, gamma: float
) -> np.ndarray:
    """r + gamma * max_a Q1(g, s', a); no bootstrap where cut (episode end or goal reached)"""
    return rewards + gamma * np.where(cut, 0.0, q_next.max(axis=-1))


def hdqn_meta_targets(
    returns: np.ndarray, q_next: np.ndarray, dones: np.ndarray, gamma: float
) -> np.ndarray:
    """f + gamma * max_g Q2(g, s'); no bootstrap at episode end"""
    return returns + gamma * np.where(dones, 0.0, q_next.max(axis=-1))


class HdqnAgent(HierarchicalAgent):
    """Two Q-networks, no dropout, no entropy or information terms"""

    variant = AgentVariant.HDQN

    def _build_networks(self) -> None:
        hidden = [self.hp.hidden_width] * self.hp.hidden_layers
        enc = self.encoder
        self.controller_q = init_mlp([enc.controller_input_size, *hidden, NUM_ACTIONS], Head.LINEAR, self.rng)
        self.meta_q = init_mlp([enc.observation_size, *hidden, enc.num_goals], Head.LINEAR, self.rng)

    def networks(self) -> Dict[str, MlpParams]:
        return {"controller_q": self.controller_q, "meta_q": self.meta_q}

    @property
    def controller_epsilon(self) -> float:
        return self.hp.epsilon(self.env_steps, self.hp.controller_epsilon_end)

    @property
    def meta_epsilon(self) -> float:
        return self.hp.epsilon(self.env_steps, self.hp.meta_epsilon_end)

    @staticmethod
    def _epsilon_greedy(q_values: np.ndarray, epsilon: float, rng: np.random.Generator) -> int:
        if epsilon > 0.0 and rng.random() < epsilon:
            return int(rng.integers(len(q_values)))
        return int(np.argmax(q_values))

    def pick_goal(self, state: EnvState, rng: np.random.Generator, greedy: bool = False) -> int:
        obs = self.encoder.observations(np.array([state.position]), np.array([state.visited_goal]))
        epsilon = 0.0 if greedy else self.meta_epsilon
        return self._epsilon_greedy(evaluate(self.meta_q, obs[0]), epsilon, rng) + 1

    def act(self, state: EnvState, goal: int, rng: np.random.Generator, greedy: bool = False) -> int:
        inputs = self.encoder.controller_inputs(
            np.array([state.position]), np.array([goal]), np.array([state.visited_goal])
        )
        epsilon = 0.0 if greedy else self.controller_epsilon
        return self._epsilon_greedy(evaluate(self.controller_q, inputs[0]), epsilon, rng)

    def update_controller(self) -> TrainLosses:
        batch = ControllerBatch.stack(self.controller_buffer.sample(self.hp.batch_size))
        next_inputs = self.encoder.controller_inputs(batch.next_states, batch.goals, batch.next_visited)
        targets = hdqn_controller_targets(
            batch.rewards,
            evaluate(self.controller_q, next_inputs),
            batch.dones | batch.reached,
            self.hp.gamma,
        )
        inputs = self.encoder.controller_inputs(batch.states, batch.goals, batch.visited)
        loss = controller_q_update(
            self.controller_q, self.optimizers["controller_q"], inputs, batch.actions, targets
        )
        return TrainLosses(controller_q=loss)

    def update_meta(self) -> TrainLosses:
        batch = MetaBatch.stack(self.meta_buffer.sample(self.hp.batch_size))
        next_obs = self.encoder.observations(batch.next_states, batch.next_visited)
        targets = hdqn_meta_targets(batch.returns, evaluate(self.meta_q, next_obs), batch.dones, self.hp.gamma)
        obs = self.encoder.observations(batch.states, batch.visited)
        loss = meta_q_update(self.meta_q, self.optimizers["meta_q"], obs, batch.goals - 1, targets)
        return TrainLosses(meta_q=loss)
