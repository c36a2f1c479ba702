"""
Tests for transitions and replay buffers.
"""

import numpy as np
import pytest

from hsac.agents.replay import ControllerTransition, MetaBatch, MetaTransition, ReplayBuffer
from hsac.errors import ConfigurationError


def test_ring_buffer_overwrites_oldest(rng):
    buffer = ReplayBuffer(3, rng)
    for i in range(5):
        buffer.push(i)
    assert len(buffer) == 3
    assert set(buffer.sample(200)) == {2, 3, 4}


def test_sampling_is_uniform_with_replacement(rng):
    buffer = ReplayBuffer(4, rng)
    for i in range(4):
        buffer.push(i)
    counts = np.bincount(buffer.sample(20_000), minlength=4) / 20_000
    np.testing.assert_allclose(counts, 0.25, atol=0.02)
    assert len(buffer.sample(10)) == 10


def test_empty_buffer_cannot_sample(rng):
    with pytest.raises(ConfigurationError):
        ReplayBuffer(2, rng).sample(1)


def test_capacity_must_be_positive(rng):
    with pytest.raises(ConfigurationError):
        ReplayBuffer(0, rng)


def test_internal_reward_tied_to_goal_reached():
    with pytest.raises(ConfigurationError):
        ControllerTransition(goal=3, state=2, action=1, internal_reward=0.0, next_state=3, done=False, goal_reached=True)
    with pytest.raises(ConfigurationError):
        ControllerTransition(goal=3, state=2, action=1, internal_reward=1.0, next_state=2, done=False, goal_reached=False)


def test_meta_return_range():
    with pytest.raises(ConfigurationError):
        MetaTransition(state=2, goal=3, external_return=1.5, next_state=1, done=True)


def test_meta_batch_columns():
    batch = MetaBatch.stack(
        [
            MetaTransition(state=2, goal=3, external_return=0.0, next_state=3, done=False),
            MetaTransition(state=3, goal=1, external_return=1.0, next_state=1, done=True, visited=True),
        ]
    )
    np.testing.assert_array_equal(batch.goals, [3, 1])
    np.testing.assert_array_equal(batch.dones, [False, True])
    np.testing.assert_array_equal(batch.visited, [False, True])
    assert batch.returns.dtype == np.float64
