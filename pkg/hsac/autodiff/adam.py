"""
Adam optimizer with bias correction, updating parameter arrays in place.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from ..errors import ConfigurationError
from .mlp import MlpParams
from .tape import Tensor

logger = logging.getLogger("hsac")


@dataclass
class AdamState:
    """Moments, step counter and hyperparameters for one network"""

    learning_rate: float = 3e-4
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    first_moments: List[Tensor] = field(default_factory=list)
    second_moments: List[Tensor] = field(default_factory=list)
    step: int = 0
    skipped_updates: int = 0

    @classmethod
    def for_params(
        cls,
        params: MlpParams,
        learning_rate: float = 3e-4,
        beta1: float = 0.9,
        beta2: float = 0.999,
        epsilon: float = 1e-8,
    ) -> "AdamState":
        """Zero-initialized state matching the parameter shapes"""
        arrays = params.arrays()
        return cls(
            learning_rate=learning_rate,
            beta1=beta1,
            beta2=beta2,
            epsilon=epsilon,
            first_moments=[np.zeros_like(a) for a in arrays],
            second_moments=[np.zeros_like(a) for a in arrays],
        )


def adam_step(params: MlpParams, grads: Sequence[Tensor], state: AdamState) -> MlpParams:
    """
    Apply one Adam update

    A gradient containing NaN or infinity skips the update entirely and
    increments state.skipped_updates; the step counter is left untouched.

    Args:
        params: Parameters, updated in place
        grads: Gradients aligned with params.arrays()
        state: Optimizer state, advanced by one step

    Returns:
        The same params object
    """
    arrays = params.arrays()
    if len(grads) != len(arrays) or len(state.first_moments) != len(arrays):
        raise ConfigurationError(
            f"Expected {len(arrays)} gradients and moments, got {len(grads)} and {len(state.first_moments)}"
        )
    for array, grad in zip(arrays, grads):
        if grad.shape != array.shape:
            raise ConfigurationError(
                f"Gradient shape {grad.shape} does not match parameter {array.shape}"
            )

    if not all(np.all(np.isfinite(grad)) for grad in grads):
        state.skipped_updates += 1
        logger.warning(
            f"[Adam] Non-finite gradient, update skipped ({state.skipped_updates} so far)"
        )
        return params

    state.step += 1
    correction1 = 1.0 - state.beta1**state.step
    correction2 = 1.0 - state.beta2**state.step
    for array, grad, m, v in zip(arrays, grads, state.first_moments, state.second_moments):
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * grad * grad
        m_hat = m / correction1
        v_hat = v / correction2
        array -= state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon)
    return params
