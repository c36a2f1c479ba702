"""
Saving and restoring agent parameters as .npz archives.
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import ConfigurationError
from .base import HierarchicalAgent

logger = logging.getLogger("hsac")

VARIANT_KEY = "__variant__"


def _key(network: str, index: int) -> str:
    return f"{network}__{index}"


def save_checkpoint(agent: HierarchicalAgent, path: Union[str, Path]) -> Path:
    """
    Write every network array of the agent to an .npz file

    Returns:
        The path written
    """
    arrays = {VARIANT_KEY: np.array(agent.variant.value)}
    for name, params in agent.networks().items():
        for i, array in enumerate(params.arrays()):
            arrays[_key(name, i)] = array
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("wb") as f:
        np.savez(f, **arrays)
    logger.info(f"[Checkpoint] Saved {agent.variant.value} to {target}")
    return target


def load_checkpoint(agent: HierarchicalAgent, path: Union[str, Path]) -> None:
    """
    Copy saved arrays into the agent's networks in place

    Raises:
        ConfigurationError: If the variant, an array name or a shape does not match
    """
    with np.load(Path(path)) as archive:
        saved_variant = str(archive[VARIANT_KEY])
        if saved_variant != agent.variant.value:
            raise ConfigurationError(
                f"Checkpoint holds a {saved_variant} agent, not {agent.variant.value}"
            )
        for name, params in agent.networks().items():
            for i, array in enumerate(params.arrays()):
                key = _key(name, i)
                if key not in archive.files:
                    raise ConfigurationError(f"Checkpoint is missing {key}")
                saved = archive[key]
                if saved.shape != array.shape:
                    raise ConfigurationError(
                        f"{key}: saved shape {saved.shape} does not match {array.shape}"
                    )
                array[...] = saved
    logger.info(f"[Checkpoint] Loaded {agent.variant.value} from {path}")
