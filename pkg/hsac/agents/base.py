"""
Base class shared by the four hierarchical agents.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from ..autodiff.adam import AdamState
from ..autodiff.mlp import MlpParams
from ..env.sdp import Action, EnvState
from ..errors import ConfigurationError, NonFiniteError
from .enums import AgentVariant
from .hyperparams import Hyperparams
from .replay import ControllerTransition, MetaTransition, ReplayBuffer

logger = logging.getLogger("hsac")

NUM_ACTIONS = len(Action)


class Encoder:
    """
    One-hot network inputs for a chain of n_g states

    Positions and goals are 1-based. The observation is the one-hot
    position, followed by the visited bit when observe_visited is set;
    controller inputs append the one-hot goal.
    """

    def __init__(self, n_g: int, observe_visited: bool = False):
        if n_g < 1:
            raise ConfigurationError(f"n_g must be positive, got {n_g}")
        self.n_g = n_g
        self.observe_visited = observe_visited

    @property
    def num_goals(self) -> int:
        return self.n_g

    @property
    def observation_size(self) -> int:
        return self.n_g + (1 if self.observe_visited else 0)

    @property
    def controller_input_size(self) -> int:
        return self.observation_size + self.num_goals

    def _one_hot(self, indices: np.ndarray, name: str) -> np.ndarray:
        idx = np.atleast_1d(np.asarray(indices, dtype=np.int64))
        if np.any(idx < 1) or np.any(idx > self.n_g):
            raise ConfigurationError(f"{name} out of range 1..{self.n_g}: {idx.tolist()}")
        return np.eye(self.n_g)[idx - 1]

    def observations(self, positions: np.ndarray, visited: Optional[np.ndarray] = None) -> np.ndarray:
        """(B, observation_size)"""
        encoded = self._one_hot(positions, "position")
        if not self.observe_visited:
            return encoded
        flags = np.zeros(len(encoded)) if visited is None else np.atleast_1d(visited)
        return np.concatenate([encoded, flags.astype(np.float64)[:, None]], axis=1)

    def controller_inputs(
        self, positions: np.ndarray, goals: np.ndarray, visited: Optional[np.ndarray] = None
    ) -> np.ndarray:
        """(B, controller_input_size)"""
        return np.concatenate(
            [self.observations(positions, visited), self._one_hot(goals, "goal")], axis=1
        )

    def all_goal_inputs(self, positions: np.ndarray, visited: Optional[np.ndarray] = None) -> np.ndarray:
        """(B * G, controller_input_size); row b * G + g pairs state b with goal g + 1"""
        obs = self.observations(positions, visited)
        repeated = np.repeat(obs, self.num_goals, axis=0)
        goals = np.tile(np.eye(self.num_goals), (len(obs), 1))
        return np.concatenate([repeated, goals], axis=1)


@dataclass
class TrainLosses:
    """Losses of the updates run by one train step; None when skipped"""

    controller_q: Optional[float] = None
    controller_policy: Optional[float] = None
    meta_q: Optional[float] = None
    meta_policy: Optional[float] = None

    def values(self) -> Dict[str, float]:
        return {k: v for k, v in self.__dict__.items() if v is not None}


class HierarchicalAgent(ABC):
    """
    Meta-controller choosing goals and controller choosing actions

    Every variant exposes pick_goal, act, observe_controller,
    observe_meta and train_step, so the rollout and the harness never
    look at the variant.
    """

    variant: AgentVariant

    def __init__(self, n_g: int, hp: Hyperparams, rng: np.random.Generator):
        self.n_g = n_g
        self.hp = hp
        self.rng = rng
        self.encoder = Encoder(n_g, hp.observe_visited_goal)
        self.controller_buffer: ReplayBuffer[ControllerTransition] = ReplayBuffer(hp.buffer_capacity, rng)
        self.meta_buffer: ReplayBuffer[MetaTransition] = ReplayBuffer(hp.buffer_capacity, rng)
        self.env_steps = 0
        self.meta_steps = 0
        self.optimizers: Dict[str, AdamState] = {}
        self._build_networks()
        for name, params in self.networks().items():
            self.optimizers[name] = AdamState.for_params(
                params,
                learning_rate=hp.learning_rate,
                beta1=hp.adam_beta1,
                beta2=hp.adam_beta2,
                epsilon=hp.adam_eps,
            )

    @abstractmethod
    def _build_networks(self) -> None:
        """Initialize the variant's networks from self.rng"""

    @abstractmethod
    def networks(self) -> Dict[str, MlpParams]:
        """Every trainable network by name"""

    @abstractmethod
    def pick_goal(self, state: EnvState, rng: np.random.Generator, greedy: bool = False) -> int:
        """Choose a 1-based goal for the current state"""

    @abstractmethod
    def act(self, state: EnvState, goal: int, rng: np.random.Generator, greedy: bool = False) -> int:
        """Choose an atomic action for (state, goal)"""

    @abstractmethod
    def update_controller(self) -> TrainLosses:
        """One controller update on a batch from the controller buffer"""

    @abstractmethod
    def update_meta(self) -> TrainLosses:
        """One meta-controller update on a batch from the meta buffer"""

    def observe_controller(self, transition: ControllerTransition) -> None:
        self.controller_buffer.push(transition)
        self.env_steps += 1

    def observe_meta(self, transition: MetaTransition) -> None:
        self.meta_buffer.push(transition)
        self.meta_steps += 1

    @property
    def skipped_updates(self) -> int:
        """Adam updates skipped because of non-finite gradients"""
        return sum(state.skipped_updates for state in self.optimizers.values())

    def train_step(self, meta_transition_closed: bool) -> TrainLosses:
        """
        Run the updates owed after one environment step

        The controller is updated updates_per_env_step times; the
        meta-controller once when a meta-transition was just closed.
        Updates with an empty buffer are skipped.

        Raises:
            NonFiniteError: If any loss is NaN or infinite
        """
        losses = TrainLosses()
        if len(self.controller_buffer) > 0:
            for _ in range(self.hp.updates_per_env_step):
                step_losses = self.update_controller()
                losses.controller_q = step_losses.controller_q
                losses.controller_policy = step_losses.controller_policy
        if meta_transition_closed and len(self.meta_buffer) > 0:
            step_losses = self.update_meta()
            losses.meta_q = step_losses.meta_q
            losses.meta_policy = step_losses.meta_policy

        for name, value in losses.values().items():
            if not np.isfinite(value):
                raise NonFiniteError(f"Non-finite {name} loss: {value}")
        if losses.values():
            logger.debug(f"[{self.variant.value}] step {self.env_steps}: {losses.values()}")
        return losses
