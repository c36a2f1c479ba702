"""
Tests for the Adam optimizer.
"""

import numpy as np
import pytest

from hsac.autodiff.adam import AdamState, adam_step
from hsac.autodiff.mlp import Head, init_mlp
from hsac.errors import ConfigurationError


def test_first_step_moves_by_learning_rate(rng):
    """With bias correction the first update is lr * sign(grad)."""
    params = init_mlp([2, 3, 1], Head.LINEAR, rng)
    before = [a.copy() for a in params.arrays()]
    grads = [np.full_like(a, 2.0) for a in params.arrays()]
    grads[1][0] = -0.5
    state = AdamState.for_params(params, learning_rate=0.01)

    adam_step(params, grads, state)

    assert state.step == 1
    for old, new, grad in zip(before, params.arrays(), grads):
        np.testing.assert_allclose(old - new, 0.01 * np.sign(grad), rtol=1e-6)


def test_updates_are_in_place(rng):
    params = init_mlp([2, 3, 1], Head.LINEAR, rng)
    weight = params.layers[0].weight
    state = AdamState.for_params(params)
    adam_step(params, [np.ones_like(a) for a in params.arrays()], state)
    assert params.layers[0].weight is weight


def test_non_finite_gradient_skips_update(rng):
    params = init_mlp([2, 3, 1], Head.LINEAR, rng)
    before = [a.copy() for a in params.arrays()]
    grads = [np.ones_like(a) for a in params.arrays()]
    grads[0][0, 0] = np.nan
    state = AdamState.for_params(params)

    adam_step(params, grads, state)

    assert state.step == 0
    assert state.skipped_updates == 1
    for old, new in zip(before, params.arrays()):
        np.testing.assert_array_equal(old, new)


def test_gradient_count_and_shape_checked(rng):
    params = init_mlp([2, 3, 1], Head.LINEAR, rng)
    state = AdamState.for_params(params)
    with pytest.raises(ConfigurationError):
        adam_step(params, [np.ones(1)], state)
    grads = [np.ones_like(a) for a in params.arrays()]
    grads[0] = np.ones((2, 3))
    with pytest.raises(ConfigurationError):
        adam_step(params, grads, state)


def test_minimizes_a_quadratic(rng):
    params = init_mlp([1, 1], Head.LINEAR, rng)
    target = np.array([[3.0]])
    state = AdamState.for_params(params, learning_rate=0.05)
    for _ in range(2000):
        w = params.layers[0].weight
        b = params.layers[0].bias
        residual = w + b - target
        adam_step(params, [2.0 * residual, 2.0 * residual.reshape(1)], state)
    np.testing.assert_allclose(params.layers[0].weight + params.layers[0].bias, target, atol=1e-2)
