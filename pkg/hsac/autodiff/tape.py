"""
Reverse-mode differentiation tape over float64 numpy arrays.

Every primitive records its output together with a vector-Jacobian
product closure. Replaying the recorded nodes in reverse execution order
accumulates gradients back to the watched parameter arrays.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Protocol, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from ..errors import ConfigurationError, UsageError

Tensor = npt.NDArray[np.float64]
Operand = Union["Var", Tensor, float, int]
VjpFn = Callable[[Tensor], Tuple[Optional[Tensor], ...]]


class ParameterSet(Protocol):
    """Anything that exposes its trainable arrays in a fixed order"""

    def arrays(self) -> List[Tensor]: ...


class Var:
    """A value living on a tape"""

    __slots__ = ("tape", "value", "index", "requires_grad")

    def __init__(self, tape: "Tape", value: Tensor, index: int, requires_grad: bool):
        self.tape = tape
        self.value = value
        self.index = index
        self.requires_grad = requires_grad

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.value.shape

    def item(self) -> float:
        """
        Return the value of a single-element variable as a float

        Raises:
            ConfigurationError: If the variable holds more than one element
        """
        if self.value.size != 1:
            raise ConfigurationError(
                f"item() needs a single element, got shape {self.value.shape}"
            )
        return float(self.value.reshape(()))

    # Operator sugar; the primitives live in ops.py
    def __add__(self, other: Operand) -> "Var":
        from .ops import add

        return add(self, other)

    def __radd__(self, other: Operand) -> "Var":
        from .ops import add

        return add(other, self)

    def __sub__(self, other: Operand) -> "Var":
        from .ops import sub

        return sub(self, other)

    def __rsub__(self, other: Operand) -> "Var":
        from .ops import sub

        return sub(other, self)

    def __mul__(self, other: Operand) -> "Var":
        from .ops import mul

        return mul(self, other)

    def __rmul__(self, other: Operand) -> "Var":
        from .ops import mul

        return mul(other, self)

    def __truediv__(self, other: Operand) -> "Var":
        from .ops import div

        return div(self, other)

    def __neg__(self) -> "Var":
        from .ops import neg

        return neg(self)

    def __repr__(self) -> str:
        return f"Var(shape={self.value.shape}, requires_grad={self.requires_grad})"


@dataclass
class _Node:
    """One recorded primitive"""

    op: str
    output: Var
    parents: Tuple[Var, ...]
    vjp: VjpFn


class Gradients:
    """Gradient map keyed by the identity of the watched parameter arrays"""

    def __init__(self, by_array: Dict[int, Tensor]):
        self._by_array = by_array

    def for_array(self, array: Tensor) -> Tensor:
        """
        Gradient for one parameter array

        Arrays that never took part in the forward pass get exact zeros.
        """
        grad = self._by_array.get(id(array))
        if grad is None:
            return np.zeros_like(array)
        return grad

    def for_params(self, params: ParameterSet) -> List[Tensor]:
        """Gradients aligned with params.arrays()"""
        return [self.for_array(array) for array in params.arrays()]


class Tape:
    """
    Records primitive operations in execution order.

    A tape can be replayed backward exactly once; build a new tape
    (i.e. re-run the forward pass) for every gradient computation.
    """

    def __init__(self) -> None:
        self._nodes: List[_Node] = []
        self._leaves: Dict[int, Var] = {}
        self._next_index = 0
        self._consumed = False

    def _allocate(self) -> int:
        index = self._next_index
        self._next_index += 1
        return index

    @property
    def operations(self) -> List[str]:
        """Names of the recorded primitives, in execution order"""
        return [node.op for node in self._nodes]

    @property
    def consumed(self) -> bool:
        return self._consumed

    def watch(self, array: Tensor) -> Var:
        """
        Register a parameter array as a differentiable leaf

        Watching the same array twice returns the same leaf, so a network
        evaluated several times on one tape accumulates a single gradient.
        """
        leaf = self._leaves.get(id(array))
        if leaf is None:
            leaf = Var(self, array, self._allocate(), True)
            self._leaves[id(array)] = leaf
        return leaf

    def constant(self, value: Union[Tensor, float, Sequence[float]]) -> Var:
        """Wrap a value that receives no gradient"""
        array = np.asarray(value, dtype=np.float64)
        return Var(self, array, self._allocate(), False)

    def record(
        self, op: str, value: Tensor, parents: Tuple[Var, ...], vjp: VjpFn
    ) -> Var:
        """
        Record the output of a primitive

        Args:
            op: Name of the primitive
            value: Forward value
            parents: Input variables, in the order vjp returns their gradients
            vjp: Maps the output gradient to one gradient per parent

        Returns:
            The output variable
        """
        if self._consumed:
            raise UsageError("Cannot record on a tape that was already replayed")
        requires_grad = any(parent.requires_grad for parent in parents)
        out = Var(self, value, self._allocate(), requires_grad)
        if requires_grad:
            self._nodes.append(_Node(op, out, parents, vjp))
        return out

    def backward(self, output: Var, output_grad: Optional[Tensor] = None) -> Gradients:
        """
        Replay the tape backward from output

        Args:
            output: Variable to differentiate
            output_grad: Seed gradient; defaults to 1 for single-element outputs

        Returns:
            Gradients for every watched parameter array

        Raises:
            UsageError: If the tape was already replayed or output is foreign
            ConfigurationError: If the seed gradient does not match the output
        """
        if self._consumed:
            raise UsageError("Tape already replayed; record a new forward pass first")
        if output.tape is not self:
            raise UsageError("Output variable was recorded on a different tape")

        if output_grad is None:
            if output.value.size != 1:
                raise ConfigurationError(
                    f"Seed gradient required for non-scalar output of shape {output.shape}"
                )
            seed = np.ones_like(output.value)
        else:
            seed = np.asarray(output_grad, dtype=np.float64)
            if seed.shape != output.value.shape:
                raise ConfigurationError(
                    f"Seed gradient shape {seed.shape} does not match output {output.shape}"
                )

        self._consumed = True
        grads: Dict[int, Tensor] = {output.index: seed}
        for node in reversed(self._nodes):
            grad = grads.pop(node.output.index, None)
            if grad is None:
                continue
            for parent, parent_grad in zip(node.parents, node.vjp(grad)):
                if parent_grad is None or not parent.requires_grad:
                    continue
                if parent.index in grads:
                    grads[parent.index] = grads[parent.index] + parent_grad
                else:
                    grads[parent.index] = parent_grad

        return Gradients(
            {
                key: grads.get(leaf.index, np.zeros_like(leaf.value))
                for key, leaf in self._leaves.items()
            }
        )


def backward(tape: Tape, output: Var, output_grad: Optional[Tensor] = None) -> Gradients:
    """Module-level alias of Tape.backward"""
    return tape.backward(output, output_grad)
