"""
Stochastic decision process with a history-dependent terminal reward.

States are s_1..s_{n_g}; the agent starts at s_2. Left moves one state
down deterministically, right moves up with probability 0.5 and down
otherwise. Entering s_1 ends the episode with reward 1.0 if s_{n_g} was
visited on the way, 0.01 otherwise.
"""

import logging
from dataclasses import dataclass, replace
from enum import IntEnum
from typing import Optional, TextIO

import numpy as np

from ..errors import ConfigurationError, UsageError

logger = logging.getLogger("hsac")

START_POSITION = 2
GOAL_REWARD = 1.0
EARLY_EXIT_REWARD = 0.01
DEFAULT_STEP_CAP_FACTOR = 50


class Action(IntEnum):
    """Atomic controller actions"""

    LEFT = 0
    RIGHT = 1

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class EnvConfig:
    """Size of the chain and the episode step cap"""

    n_g: int
    max_episode_steps: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n_g < 3:
            raise ConfigurationError(f"n_g must be at least 3, got {self.n_g}")
        if self.max_episode_steps is None:
            object.__setattr__(self, "max_episode_steps", DEFAULT_STEP_CAP_FACTOR * self.n_g)
        elif self.max_episode_steps < self.n_g:
            raise ConfigurationError(
                f"max_episode_steps ({self.max_episode_steps}) must be at least n_g ({self.n_g})"
            )

    @property
    def step_cap(self) -> int:
        assert self.max_episode_steps is not None
        return self.max_episode_steps


@dataclass(frozen=True)
class EnvState:
    """Position, whether s_{n_g} was visited this episode, and the step count"""

    position: int
    visited_goal: bool = False
    steps: int = 0
    terminal: bool = False


@dataclass(frozen=True)
class StepOutcome:
    """Result of one environment transition"""

    next_state: EnvState
    done: bool
    external_reward: float
    truncated: bool = False


def reset(config: EnvConfig) -> EnvState:
    """Initial state of an episode"""
    return EnvState(
        position=START_POSITION,
        visited_goal=START_POSITION == config.n_g,
        steps=0,
    )


def step(
    config: EnvConfig, state: EnvState, action: int, rng: np.random.Generator
) -> StepOutcome:
    """
    Advance the process by one action

    Right at the top state s_{n_g} self-loops on success and moves left on
    failure. The terminal reward is granted when entering s_1; hitting the
    step cap ends the episode with reward 0 and truncated=True.

    Raises:
        UsageError: If the state is terminal or already at the step cap
        ConfigurationError: If the action is not left or right
    """
    if state.terminal or state.steps >= config.step_cap:
        raise UsageError(f"Cannot step a terminal state: {state}")
    try:
        move = Action(int(action))
    except ValueError:
        raise ConfigurationError(f"Invalid action: {action}")

    position = state.position
    if move == Action.LEFT:
        position -= 1
    elif rng.random() < 0.5:
        position = min(position + 1, config.n_g)
    else:
        position -= 1

    visited = state.visited_goal or position == config.n_g
    steps = state.steps + 1

    if position == 1:
        reward = GOAL_REWARD if visited else EARLY_EXIT_REWARD
        next_state = EnvState(position, visited, steps, terminal=True)
        return StepOutcome(next_state, True, reward)
    if steps >= config.step_cap:
        next_state = EnvState(position, visited, steps, terminal=True)
        return StepOutcome(next_state, True, 0.0, truncated=True)
    return StepOutcome(replace(state, position=position, visited_goal=visited, steps=steps), False, 0.0)


def goal_reached(state: EnvState, goal: int) -> bool:
    """True iff the current position is the goal state"""
    return state.position == goal


class TraceWriter:
    """Writes one tab-separated line per environment step"""

    HEADER = "episode\tstep\tposition\taction\tnext_position\tdone\treward"

    def __init__(self, stream: TextIO, header: bool = True):
        self._stream = stream
        if header:
            self._stream.write(self.HEADER + "\n")

    def write(
        self,
        episode: int,
        state: EnvState,
        action: int,
        outcome: StepOutcome,
    ) -> None:
        self._stream.write(
            f"{episode}\t{outcome.next_state.steps}\t{state.position}\t{Action(action).label}\t"
            f"{outcome.next_state.position}\t{int(outcome.done)}\t{outcome.external_reward!r}\n"
        )
