"""
Tests for the stochastic decision process.
"""

import io

import numpy as np
import pytest

from hsac.env.sdp import (
    Action,
    EnvConfig,
    EnvState,
    TraceWriter,
    goal_reached,
    reset,
    step,
)
from hsac.errors import ConfigurationError, UsageError


class FixedDraw:
    """Stands in for a generator whose uniform draw is always the same"""

    def __init__(self, value: float):
        self.value = value

    def random(self) -> float:
        return self.value


SUCCEED = FixedDraw(0.1)
FAIL = FixedDraw(0.9)


def test_reset_starts_at_second_state():
    state = reset(EnvConfig(6))
    assert state == EnvState(position=2, visited_goal=False, steps=0)


def test_default_step_cap():
    assert EnvConfig(6).step_cap == 300
    assert EnvConfig(6, max_episode_steps=10).step_cap == 10


@pytest.mark.parametrize("kwargs", [{"n_g": 2}, {"n_g": 6, "max_episode_steps": 5}])
def test_invalid_config(kwargs):
    with pytest.raises(ConfigurationError):
        EnvConfig(**kwargs)


def test_left_from_start_ends_with_small_reward():
    config = EnvConfig(6)
    outcome = step(config, reset(config), Action.LEFT, SUCCEED)
    assert outcome.done
    assert not outcome.truncated
    assert outcome.next_state.position == 1
    assert outcome.external_reward == 0.01


def test_failed_right_moves_left():
    config = EnvConfig(6)
    state = EnvState(position=4)
    outcome = step(config, state, Action.RIGHT, FAIL)
    assert outcome.next_state.position == 3
    assert not outcome.done


def test_visiting_the_top_pays_full_reward():
    config = EnvConfig(3)
    state = reset(config)
    outcome = step(config, state, Action.RIGHT, SUCCEED)
    assert outcome.next_state.position == 3
    assert outcome.next_state.visited_goal

    outcome = step(config, outcome.next_state, Action.LEFT, SUCCEED)
    assert outcome.next_state.position == 2
    assert outcome.next_state.visited_goal

    outcome = step(config, outcome.next_state, Action.LEFT, SUCCEED)
    assert outcome.done
    assert outcome.external_reward == 1.0
    assert outcome.next_state.steps == 3


def test_right_at_top_self_loops():
    config = EnvConfig(4)
    state = EnvState(position=4, visited_goal=True, steps=3)
    assert step(config, state, Action.RIGHT, SUCCEED).next_state.position == 4
    assert step(config, state, Action.RIGHT, FAIL).next_state.position == 3


def test_step_cap_truncates_with_zero_reward():
    config = EnvConfig(3, max_episode_steps=3)
    state = reset(config)
    for _ in range(2):
        outcome = step(config, state, Action.RIGHT, SUCCEED)
        assert not outcome.done
        state = outcome.next_state
    outcome = step(config, state, Action.RIGHT, SUCCEED)
    assert outcome.done
    assert outcome.truncated
    assert outcome.external_reward == 0.0


def test_terminal_state_cannot_step():
    config = EnvConfig(3)
    outcome = step(config, reset(config), Action.LEFT, SUCCEED)
    with pytest.raises(UsageError):
        step(config, outcome.next_state, Action.LEFT, SUCCEED)


def test_invalid_action():
    config = EnvConfig(3)
    with pytest.raises(ConfigurationError):
        step(config, reset(config), 2, SUCCEED)


def test_right_succeeds_half_of_the_time():
    config = EnvConfig(6)
    rng = np.random.default_rng(7)
    state = EnvState(position=3)
    draws = 100_000
    ups = sum(step(config, state, Action.RIGHT, rng).next_state.position == 4 for _ in range(draws))
    assert abs(ups / draws - 0.5) < 0.01


def test_always_left_pays_exactly_the_small_reward():
    config = EnvConfig(8)
    rng = np.random.default_rng(0)
    for _ in range(100):
        outcome = step(config, reset(config), Action.LEFT, rng)
        assert outcome.done
        assert outcome.external_reward == 0.01


def test_goal_reached():
    assert goal_reached(EnvState(position=5), 5)
    assert not goal_reached(EnvState(position=4), 5)


def test_trace_writer_format():
    config = EnvConfig(3)
    stream = io.StringIO()
    writer = TraceWriter(stream)
    state = reset(config)
    writer.write(7, state, Action.LEFT, step(config, state, Action.LEFT, SUCCEED))
    lines = stream.getvalue().splitlines()
    assert lines[0] == TraceWriter.HEADER
    assert lines[1] == "7\t1\t2\tleft\t1\t1\t0.01"
