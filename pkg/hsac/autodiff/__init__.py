"""
Dense reverse-mode differentiation for small perceptrons.
"""

from .adam import AdamState, adam_step
from .gradcheck import grad_check
from .mlp import DropoutMask, Head, Layer, MlpParams, evaluate, forward, forward_logits, init_mlp
from .tape import Gradients, Tape, Tensor, Var, backward

__all__ = [
    "AdamState",
    "DropoutMask",
    "Gradients",
    "Head",
    "Layer",
    "MlpParams",
    "Tape",
    "Tensor",
    "Var",
    "adam_step",
    "backward",
    "evaluate",
    "forward",
    "forward_logits",
    "grad_check",
    "init_mlp",
]
