"""
Multilayer perceptrons with ReLU hidden layers and inverted dropout.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ConfigurationError, NonFiniteError
from . import ops
from .tape import Tape, Tensor, Var


class Head(Enum):
    """Output head of a network"""

    LINEAR = "linear"
    SOFTMAX = "softmax"

    @classmethod
    def from_string(cls, value: str) -> "Head":
        """
        Convert string to Head, with validation

        Raises:
            ValueError: If the string doesn't match a valid head
        """
        try:
            return cls(value.lower())
        except ValueError:
            valid = ", ".join([h.value for h in cls])
            raise ValueError(f"Invalid head: '{value}'. Valid heads are: {valid}")


@dataclass
class Layer:
    """Weight (out x in) and bias (out) of one affine layer"""

    weight: Tensor
    bias: Tensor


@dataclass
class MlpParams:
    """Parameters of a perceptron; hidden layers use ReLU"""

    layers: List[Layer]
    head: Head = Head.LINEAR

    def __post_init__(self) -> None:
        if not self.layers:
            raise ConfigurationError("A network needs at least one layer")
        for i, layer in enumerate(self.layers):
            out_dim, in_dim = layer.weight.shape
            if layer.bias.shape != (out_dim,):
                raise ConfigurationError(
                    f"Layer {i}: bias shape {layer.bias.shape} does not match weight {layer.weight.shape}"
                )
            if i > 0 and in_dim != self.layers[i - 1].weight.shape[0]:
                raise ConfigurationError(
                    f"Layer {i}: input width {in_dim} does not match previous output "
                    f"{self.layers[i - 1].weight.shape[0]}"
                )

    @property
    def in_features(self) -> int:
        return int(self.layers[0].weight.shape[1])

    @property
    def out_features(self) -> int:
        return int(self.layers[-1].weight.shape[0])

    @property
    def hidden_widths(self) -> List[int]:
        return [int(layer.weight.shape[0]) for layer in self.layers[:-1]]

    def arrays(self) -> List[Tensor]:
        """Trainable arrays in a fixed order: w0, b0, w1, b1, ..."""
        out: List[Tensor] = []
        for layer in self.layers:
            out.extend((layer.weight, layer.bias))
        return out

    def copy(self) -> "MlpParams":
        return MlpParams(
            [Layer(layer.weight.copy(), layer.bias.copy()) for layer in self.layers],
            self.head,
        )


def init_mlp(sizes: Sequence[int], head: Head, rng: np.random.Generator) -> MlpParams:
    """
    Create a network with Glorot-uniform weights and zero biases

    Args:
        sizes: Layer widths including input and output, e.g. [12, 256, 256, 2]
        head: Output head
        rng: Random generator used for the weights

    Returns:
        Freshly initialized parameters
    """
    if len(sizes) < 2 or any(int(s) < 1 for s in sizes):
        raise ConfigurationError(f"Invalid layer sizes: {list(sizes)}")
    layers = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weight = rng.uniform(-limit, limit, size=(fan_out, fan_in)).astype(np.float64)
        layers.append(Layer(weight, np.zeros(fan_out, dtype=np.float64)))
    return MlpParams(layers, head)


@dataclass(frozen=True)
class DropoutMask:
    """Inverted-dropout masks, one per hidden layer, entries in {0, 1/keep_prob}"""

    keep_prob: float
    masks: Tuple[Tensor, ...] = field(default_factory=tuple)

    @classmethod
    def sample(
        cls,
        params: MlpParams,
        batch_size: int,
        rate: float,
        rng: np.random.Generator,
    ) -> "DropoutMask":
        """
        Draw a fresh mask for a batch

        Args:
            params: Network the mask is for
            batch_size: Number of rows in the batch
            rate: Drop probability in [0, 1)
            rng: Random generator
        """
        if not 0.0 <= rate < 1.0:
            raise ConfigurationError(f"Dropout rate must be in [0, 1), got {rate}")
        keep = 1.0 - rate
        masks = tuple(
            (rng.random((batch_size, width)) < keep).astype(np.float64) / keep
            for width in params.hidden_widths
        )
        return cls(keep, masks)


def _prepare_inputs(params: MlpParams, inputs: Tensor) -> Tuple[Tensor, bool]:
    x = np.asarray(inputs, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise NonFiniteError("Network input contains NaN or infinity")
    squeeze = x.ndim == 1
    if squeeze:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != params.in_features:
        raise ConfigurationError(
            f"Input of shape {np.shape(inputs)} does not match network input width {params.in_features}"
        )
    return x, squeeze


def forward_logits(
    params: MlpParams,
    inputs: Tensor,
    tape: Tape,
    mask: Optional[DropoutMask] = None,
) -> Var:
    """
    Forward pass up to (not including) the output head

    Inputs may be a single vector or a batch of row vectors; the output
    keeps the same rank.
    """
    x, squeeze = _prepare_inputs(params, inputs)
    if mask is not None:
        if len(mask.masks) != len(params.layers) - 1:
            raise ConfigurationError(
                f"Dropout mask has {len(mask.masks)} layers, network has {len(params.layers) - 1} hidden layers"
            )
        for m, width in zip(mask.masks, params.hidden_widths):
            if m.shape != (x.shape[0], width):
                raise ConfigurationError(
                    f"Dropout mask shape {m.shape} does not match batch ({x.shape[0]}, {width})"
                )

    h = tape.constant(x)
    last = len(params.layers) - 1
    for i, layer in enumerate(params.layers):
        h = ops.linear(h, tape.watch(layer.weight), tape.watch(layer.bias))
        if i < last:
            h = ops.relu(h)
            if mask is not None:
                h = ops.mul(h, mask.masks[i])
    if squeeze:
        h = ops.reshape(h, (params.out_features,))
    return h


def forward(
    params: MlpParams,
    inputs: Tensor,
    tape: Tape,
    mask: Optional[DropoutMask] = None,
) -> Var:
    """Forward pass including the output head"""
    logits = forward_logits(params, inputs, tape, mask)
    if params.head == Head.SOFTMAX:
        return ops.softmax(logits)
    return logits


def evaluate(
    params: MlpParams, inputs: Tensor, mask: Optional[DropoutMask] = None
) -> Tensor:
    """Head output as a plain array; nothing is differentiated"""
    return forward(params, inputs, Tape(), mask).value


def evaluate_logits(params: MlpParams, inputs: Tensor) -> Tensor:
    """Pre-head output as a plain array"""
    return forward_logits(params, inputs, Tape()).value


def hidden_preactivations(params: MlpParams, inputs: Tensor) -> List[Tensor]:
    """Pre-ReLU values of every hidden layer (no dropout)"""
    x, _ = _prepare_inputs(params, inputs)
    out = []
    for layer in params.layers[:-1]:
        z = x @ layer.weight.T + layer.bias
        out.append(z)
        x = np.maximum(z, 0.0)
    return out
