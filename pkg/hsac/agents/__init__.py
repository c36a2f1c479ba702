"""
Hierarchical agents: the HDQN baseline and three soft actor-critic variants.
"""

from .base import Encoder, HierarchicalAgent, TrainLosses
from .checkpoint import load_checkpoint, save_checkpoint
from .enums import AgentVariant, Reparameterization
from .factory import AgentFactory
from .hdqn import HdqnAgent
from .hyperparams import Hyperparams
from .replay import ControllerTransition, MetaTransition, ReplayBuffer
from .rollout import EpisodeResult, run_episode
from .sac import AdversarialMiSacAgent, EntropySacAgent, MiSacAgent, SacAgent
from .tabular import TabularQLearner

__all__ = [
    "AdversarialMiSacAgent",
    "AgentFactory",
    "AgentVariant",
    "ControllerTransition",
    "Encoder",
    "EntropySacAgent",
    "EpisodeResult",
    "HdqnAgent",
    "HierarchicalAgent",
    "Hyperparams",
    "MetaTransition",
    "MiSacAgent",
    "ReplayBuffer",
    "Reparameterization",
    "SacAgent",
    "TabularQLearner",
    "TrainLosses",
    "load_checkpoint",
    "run_episode",
    "save_checkpoint",
]
