"""
Differentiable primitives recorded on a Tape.

All primitives follow numpy broadcasting; gradients are summed back to
the shape of each operand.
"""

from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import ConfigurationError, UsageError
from .tape import Operand, Tape, Tensor, Var

LOG_FLOOR = 1e-300


def _tape_of(*operands: Operand) -> Tape:
    for operand in operands:
        if isinstance(operand, Var):
            return operand.tape
    raise UsageError("At least one operand must be a tape variable")


def _lift(tape: Tape, operand: Operand) -> Var:
    if isinstance(operand, Var):
        if operand.tape is not tape:
            raise UsageError("Operands were recorded on different tapes")
        return operand
    return tape.constant(operand)


def _unbroadcast(grad: Tensor, shape: Tuple[int, ...]) -> Tensor:
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def add(a: Operand, b: Operand) -> Var:
    tape = _tape_of(a, b)
    x, y = _lift(tape, a), _lift(tape, b)
    return tape.record(
        "add",
        x.value + y.value,
        (x, y),
        lambda g: (_unbroadcast(g, x.shape), _unbroadcast(g, y.shape)),
    )


def sub(a: Operand, b: Operand) -> Var:
    tape = _tape_of(a, b)
    x, y = _lift(tape, a), _lift(tape, b)
    return tape.record(
        "sub",
        x.value - y.value,
        (x, y),
        lambda g: (_unbroadcast(g, x.shape), _unbroadcast(-g, y.shape)),
    )


def mul(a: Operand, b: Operand) -> Var:
    tape = _tape_of(a, b)
    x, y = _lift(tape, a), _lift(tape, b)
    return tape.record(
        "mul",
        x.value * y.value,
        (x, y),
        lambda g: (
            _unbroadcast(g * y.value, x.shape),
            _unbroadcast(g * x.value, y.shape),
        ),
    )


def div(a: Operand, b: Operand) -> Var:
    tape = _tape_of(a, b)
    x, y = _lift(tape, a), _lift(tape, b)
    return tape.record(
        "div",
        x.value / y.value,
        (x, y),
        lambda g: (
            _unbroadcast(g / y.value, x.shape),
            _unbroadcast(-g * x.value / (y.value * y.value), y.shape),
        ),
    )


def neg(a: Var) -> Var:
    return a.tape.record("neg", -a.value, (a,), lambda g: (-g,))


def square(a: Var) -> Var:
    return a.tape.record("square", a.value * a.value, (a,), lambda g: (2.0 * g * a.value,))


def relu(a: Var) -> Var:
    active = a.value > 0.0
    return a.tape.record(
        "relu", np.where(active, a.value, 0.0), (a,), lambda g: (g * active,)
    )


def log(a: Var) -> Var:
    """Natural log with the argument floored at LOG_FLOOR"""
    floored = np.maximum(a.value, LOG_FLOOR)
    return a.tape.record("log", np.log(floored), (a,), lambda g: (g / floored,))


def linear(x: Var, weight: Var, bias: Var) -> Var:
    """Affine map x @ weight.T + bias for a batch of row vectors"""
    if x.value.ndim != 2 or x.shape[1] != weight.shape[1]:
        raise ConfigurationError(
            f"Input of shape {x.shape} does not match weight of shape {weight.shape}"
        )
    return x.tape.record(
        "linear",
        x.value @ weight.value.T + bias.value,
        (x, weight, bias),
        lambda g: (g @ weight.value, g.T @ x.value, g.sum(axis=0)),
    )


def softmax(a: Var) -> Var:
    """Softmax over the last axis with max-subtraction"""
    shifted = a.value - a.value.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    probs = exp / exp.sum(axis=-1, keepdims=True)
    return a.tape.record(
        "softmax",
        probs,
        (a,),
        lambda g: (probs * (g - (g * probs).sum(axis=-1, keepdims=True)),),
    )


def log_softmax(a: Var) -> Var:
    """Log-softmax over the last axis, computed without forming the softmax first"""
    shifted = a.value - a.value.max(axis=-1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=-1, keepdims=True))
    out = shifted - log_norm
    probs = np.exp(out)
    return a.tape.record(
        "log_softmax",
        out,
        (a,),
        lambda g: (g - probs * g.sum(axis=-1, keepdims=True),),
    )


def sum(a: Var, axis: Optional[int] = None, keepdims: bool = False) -> Var:  # noqa: A001
    shape = a.shape

    def vjp(g: Tensor) -> Tuple[Tensor]:
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        return (np.broadcast_to(g, shape).copy(),)

    return a.tape.record("sum", a.value.sum(axis=axis, keepdims=keepdims), (a,), vjp)


def mean(a: Var, axis: Optional[int] = None) -> Var:
    count = a.value.size if axis is None else a.shape[axis]
    return div(sum(a, axis=axis), float(count))


def reshape(a: Var, shape: Sequence[int]) -> Var:
    original = a.shape
    return a.tape.record(
        "reshape", a.value.reshape(tuple(shape)), (a,), lambda g: (g.reshape(original),)
    )


def weighted_sum(weights: Union[Var, Tensor], values: Union[Var, Tensor]) -> Var:
    """Sum of weights * values over the last axis"""
    return sum(mul(weights, values), axis=-1)
