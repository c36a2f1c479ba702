"""
Enumerations for agent variants and policy-loss estimators.
"""

from enum import Enum


class AgentVariant(Enum):
    """Enum of supported hierarchical agents"""

    HDQN = "hdqn"
    ENTROPY_SAC = "entropy_sac"
    MI_SAC = "mi_sac"
    ADVERSARIAL_MI_SAC = "adversarial_mi_sac"

    @classmethod
    def from_string(cls, value: str) -> "AgentVariant":
        """
        Convert string to AgentVariant, with validation

        Args:
            value: String representation of the variant

        Returns:
            AgentVariant enum value

        Raises:
            ValueError: If the string doesn't match a valid variant
        """
        try:
            return cls(value.strip().lower())
        except ValueError:
            valid_variants = ", ".join([v.value for v in cls])
            raise ValueError(
                f"Invalid agent variant: '{value}'. Valid variants are: {valid_variants}"
            )

    @property
    def uses_information_bonus(self) -> bool:
        """True when the controller is regularized by mutual information"""
        return self in (AgentVariant.MI_SAC, AgentVariant.ADVERSARIAL_MI_SAC)


class Reparameterization(Enum):
    """How policy objectives form the expectation of Q over a policy"""

    GUMBEL = "gumbel"
    EXACT = "exact"

    @classmethod
    def from_string(cls, value: str) -> "Reparameterization":
        """
        Convert string to Reparameterization, with validation

        Raises:
            ValueError: If the string doesn't match a valid estimator
        """
        try:
            return cls(value.strip().lower())
        except ValueError:
            valid = ", ".join([r.value for r in cls])
            raise ValueError(f"Invalid reparameterization: '{value}'. Valid values are: {valid}")
