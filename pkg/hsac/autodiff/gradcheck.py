"""
Central finite-difference verification of tape gradients.
"""

from typing import Callable, Sequence, Union

from .mlp import MlpParams
from .tape import Tape, Var

LossFn = Callable[[Tape], Var]

DEFAULT_FLOOR = 1e-8


def grad_check(
    params: Union[MlpParams, Sequence[MlpParams]],
    loss_fn: LossFn,
    eps: float = 1e-5,
    floor: float = DEFAULT_FLOOR,
) -> float:
    """
    Compare analytic and central-difference gradients

    loss_fn must build a deterministic scalar on the tape it is given:
    dropout masks and Gumbel noise have to be frozen by the caller.

    Args:
        params: Network(s) to perturb
        loss_fn: Builds the loss on a fresh tape from the current parameter values
        eps: Finite-difference step
        floor: Smallest denominator of the relative error

    Returns:
        max over entries of |analytic - numeric| / max(floor, |analytic| + |numeric|)
    """
    param_sets = [params] if isinstance(params, MlpParams) else list(params)

    tape = Tape()
    grads = tape.backward(loss_fn(tape))

    worst = 0.0
    for param_set in param_sets:
        for array, analytic in zip(param_set.arrays(), grads.for_params(param_set)):
            flat_grad = analytic.reshape(-1)
            for i in range(array.size):
                original = array.flat[i]
                array.flat[i] = original + eps
                plus = loss_fn(Tape()).item()
                array.flat[i] = original - eps
                minus = loss_fn(Tape()).item()
                array.flat[i] = original

                numeric = (plus - minus) / (2.0 * eps)
                a = float(flat_grad[i])
                error = abs(a - numeric) / max(floor, abs(a) + abs(numeric))
                worst = max(worst, error)
    return worst
