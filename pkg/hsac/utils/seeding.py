"""
Per-run seed derivation.
"""

import hashlib
from typing import Tuple

import numpy as np


def derive_run_seed(base_seed: int, variant: str, n_g: int, seed_index: int) -> int:
    """
    Stable 63-bit seed for one (variant, n_g, seed) cell

    Depends only on its arguments, so adding or removing other cells
    never changes this run.
    """
    key = f"{base_seed}:{variant}:{n_g}:{seed_index}".encode("utf-8")
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


def spawn_generators(run_seed: int) -> Tuple[np.random.Generator, np.random.Generator]:
    """Independent (agent, environment) generators for one run"""
    agent_seq, env_seq = np.random.SeedSequence(run_seed).spawn(2)
    return np.random.default_rng(agent_seq), np.random.default_rng(env_seq)
