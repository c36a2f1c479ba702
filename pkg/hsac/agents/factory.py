"""
Factory for creating agents by variant.
"""

from typing import Dict, Type

import numpy as np

from .base import HierarchicalAgent
from .enums import AgentVariant
from .hdqn import HdqnAgent
from .hyperparams import Hyperparams
from .sac import AdversarialMiSacAgent, EntropySacAgent, MiSacAgent


class AgentFactory:
    """Registry of agent classes by variant"""

    agents: Dict[AgentVariant, Type[HierarchicalAgent]] = {
        AgentVariant.HDQN: HdqnAgent,
        AgentVariant.ENTROPY_SAC: EntropySacAgent,
        AgentVariant.MI_SAC: MiSacAgent,
        AgentVariant.ADVERSARIAL_MI_SAC: AdversarialMiSacAgent,
    }

    @classmethod
    def create_agent(
        cls, variant: AgentVariant, n_g: int, hp: Hyperparams, rng: np.random.Generator
    ) -> HierarchicalAgent:
        """
        Create a freshly initialized agent

        Args:
            variant: Which of the hierarchical agents to build
            n_g: Number of chain states, which is also the number of goals
            hp: Hyperparameters
            rng: Generator owned by the agent from now on

        Raises:
            ValueError: If no agent is registered for the variant
        """
        agent_class = cls.agents.get(variant)
        if agent_class is None:
            raise ValueError(f"No agent registered for variant: {variant}")
        return agent_class(n_g, hp, rng)
