"""
Agent hyperparameters.
"""

from dataclasses import dataclass

from ..errors import ConfigurationError
from .enums import Reparameterization


@dataclass(frozen=True)
class Hyperparams:
    """Every knob of the four agents; defaults follow the experiments"""

    alpha: float = 0.2
    gamma: float = 0.99
    tau_gumbel: float = 0.3
    learning_rate: float = 3e-4
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    batch_size: int = 64
    buffer_capacity: int = 50000
    updates_per_env_step: int = 1
    hidden_width: int = 256
    hidden_layers: int = 2
    dropout_rate: float = 0.2
    epsilon_start: float = 1.0
    controller_epsilon_end: float = 0.05
    meta_epsilon_end: float = 0.1
    epsilon_decay_steps: int = 50000
    reparameterization: Reparameterization = Reparameterization.GUMBEL
    observe_visited_goal: bool = False

    def __post_init__(self) -> None:
        if self.alpha < 0.0:
            raise ConfigurationError(f"alpha must be >= 0, got {self.alpha}")
        if not 0.0 < self.gamma <= 1.0:
            raise ConfigurationError(f"gamma must be in (0, 1], got {self.gamma}")
        if not self.tau_gumbel > 0.0:
            raise ConfigurationError(f"tau_gumbel must be > 0, got {self.tau_gumbel}")
        if self.learning_rate < 0.0:
            raise ConfigurationError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if self.batch_size < 1 or self.buffer_capacity < 1:
            raise ConfigurationError("batch_size and buffer_capacity must be positive")
        if self.batch_size > self.buffer_capacity:
            raise ConfigurationError(
                f"batch_size ({self.batch_size}) must not exceed buffer_capacity ({self.buffer_capacity})"
            )
        if self.updates_per_env_step < 0:
            raise ConfigurationError("updates_per_env_step must be >= 0")
        if self.hidden_width < 1 or self.hidden_layers < 0:
            raise ConfigurationError("hidden_width must be >= 1 and hidden_layers >= 0")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ConfigurationError(f"dropout_rate must be in [0, 1), got {self.dropout_rate}")
        for name in ("epsilon_start", "controller_epsilon_end", "meta_epsilon_end"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigurationError(f"{name} must be in [0, 1], got {value}")
        if self.epsilon_decay_steps < 1:
            raise ConfigurationError("epsilon_decay_steps must be >= 1")

    def epsilon(self, step: int, end: float) -> float:
        """Linear anneal from epsilon_start to end over epsilon_decay_steps"""
        fraction = min(1.0, step / self.epsilon_decay_steps)
        return self.epsilon_start + fraction * (end - self.epsilon_start)
