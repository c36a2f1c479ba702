"""
Tests for the finite-difference gradient checker.
"""

import numpy as np
import pytest

from hsac.autodiff import ops
from hsac.autodiff.gradcheck import DEFAULT_FLOOR, grad_check
from hsac.autodiff.mlp import Head, forward, init_mlp
from hsac.autodiff.tape import Tape


def test_quadratic_regression_passes(rng):
    params = init_mlp([4, 3], Head.LINEAR, rng)
    x = rng.normal(size=(6, 4))
    y = rng.normal(size=(6, 3))

    def loss(tape: Tape):
        return ops.mean(ops.square(ops.sub(forward(params, x, tape), y)))

    assert grad_check(params, loss) < 1e-6


def test_parameters_restored_after_check(rng):
    params = init_mlp([3, 4, 2], Head.SOFTMAX, rng)
    before = [a.copy() for a in params.arrays()]
    x = rng.normal(size=(2, 3))
    grad_check(params, lambda tape: ops.sum(ops.log(forward(params, x, tape))))
    for old, new in zip(before, params.arrays()):
        np.testing.assert_array_equal(old, new)


def test_missing_gradient_is_detected(rng):
    """A loss that hides its dependence on the weights from the tape fails the check."""
    params = init_mlp([2, 2], Head.LINEAR, rng)
    x = rng.normal(size=(3, 2))

    def loss(tape: Tape):
        frozen = tape.constant(x @ params.layers[0].weight.T)
        return ops.sum(ops.square(frozen))

    assert grad_check(params, loss) > 0.5


def test_several_networks_checked_together(rng):
    first = init_mlp([3, 2], Head.LINEAR, rng)
    second = init_mlp([2, 2], Head.SOFTMAX, rng)
    x = rng.normal(size=(4, 3))
    z = rng.normal(size=(4, 2))

    def loss(tape: Tape):
        return ops.sum(ops.mul(forward(second, z, tape), forward(first, x, tape)))

    assert grad_check([first, second], loss) < 1e-5


def test_denominator_floor(rng):
    """A hidden gradient of 5e-8 is a full miss at the default 1e-8 floor, and damped by a larger floor."""
    params = init_mlp([2, 2], Head.LINEAR, rng)
    scale = 5e-8

    def loss(tape: Tape):
        return ops.sum(tape.constant(scale * params.layers[0].weight))

    assert DEFAULT_FLOOR == 1e-8
    assert grad_check(params, loss) == pytest.approx(1.0, rel=1e-4)
    assert grad_check(params, loss, floor=1e-6) == pytest.approx(scale / 1e-6, rel=1e-4)
