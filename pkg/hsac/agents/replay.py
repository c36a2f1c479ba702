"""
Transitions and uniform replay buffers for both levels of the hierarchy.
"""

from dataclasses import dataclass
from typing import Generic, List, TypeVar

import numpy as np

from ..errors import ConfigurationError


@dataclass(frozen=True)
class ControllerTransition:
    """(g, s, a, r, s', flags) seen by the controller; positions and goals are 1-based"""

    goal: int
    state: int
    action: int
    internal_reward: float
    next_state: int
    done: bool
    goal_reached: bool
    visited: bool = False
    next_visited: bool = False

    def __post_init__(self) -> None:
        if self.internal_reward != (1.0 if self.goal_reached else 0.0):
            raise ConfigurationError(
                f"internal_reward must be 1 exactly when the goal is reached: {self}"
            )


@dataclass(frozen=True)
class MetaTransition:
    """(s, g, F, s', flag) seen by the meta-controller over one goal tenure"""

    state: int
    goal: int
    external_return: float
    next_state: int
    done: bool
    visited: bool = False
    next_visited: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.external_return <= 1.0:
            raise ConfigurationError(
                f"external_return must be in [0, 1], got {self.external_return}"
            )


T = TypeVar("T")


class ReplayBuffer(Generic[T]):
    """Ring buffer with uniform sampling with replacement"""

    def __init__(self, capacity: int, rng: np.random.Generator):
        if capacity < 1:
            raise ConfigurationError(f"capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._rng = rng
        self._items: List[T] = []
        self._next = 0

    def push(self, item: T) -> None:
        if len(self._items) < self.capacity:
            self._items.append(item)
        else:
            self._items[self._next] = item
        self._next = (self._next + 1) % self.capacity

    def sample(self, batch_size: int) -> List[T]:
        """
        Draw batch_size items uniformly with replacement

        Raises:
            ConfigurationError: If the buffer is empty
        """
        if not self._items:
            raise ConfigurationError("Cannot sample from an empty replay buffer")
        indices = self._rng.integers(0, len(self._items), size=batch_size)
        return [self._items[i] for i in indices]

    def __len__(self) -> int:
        return len(self._items)


@dataclass(frozen=True)
class ControllerBatch:
    """Column view of a list of controller transitions"""

    goals: np.ndarray
    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray
    dones: np.ndarray
    reached: np.ndarray
    visited: np.ndarray
    next_visited: np.ndarray

    @classmethod
    def stack(cls, batch: List[ControllerTransition]) -> "ControllerBatch":
        return cls(
            goals=np.array([t.goal for t in batch], dtype=np.int64),
            states=np.array([t.state for t in batch], dtype=np.int64),
            actions=np.array([t.action for t in batch], dtype=np.int64),
            rewards=np.array([t.internal_reward for t in batch], dtype=np.float64),
            next_states=np.array([t.next_state for t in batch], dtype=np.int64),
            dones=np.array([t.done for t in batch], dtype=bool),
            reached=np.array([t.goal_reached for t in batch], dtype=bool),
            visited=np.array([t.visited for t in batch], dtype=bool),
            next_visited=np.array([t.next_visited for t in batch], dtype=bool),
        )


@dataclass(frozen=True)
class MetaBatch:
    """Column view of a list of meta transitions"""

    states: np.ndarray
    goals: np.ndarray
    returns: np.ndarray
    next_states: np.ndarray
    dones: np.ndarray
    visited: np.ndarray
    next_visited: np.ndarray

    @classmethod
    def stack(cls, batch: List[MetaTransition]) -> "MetaBatch":
        return cls(
            states=np.array([t.state for t in batch], dtype=np.int64),
            goals=np.array([t.goal for t in batch], dtype=np.int64),
            returns=np.array([t.external_return for t in batch], dtype=np.float64),
            next_states=np.array([t.next_state for t in batch], dtype=np.int64),
            dones=np.array([t.done for t in batch], dtype=bool),
            visited=np.array([t.visited for t in batch], dtype=bool),
            next_visited=np.array([t.next_visited for t in batch], dtype=bool),
        )
