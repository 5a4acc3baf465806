"""Deterministic random streams derived from a run seed and a task id."""

from __future__ import annotations

import numpy as np


def derive_seed_sequence(seed: int, *key: int) -> np.random.SeedSequence:
    """Seed sequence for task ``key`` under run ``seed``.

    The stream depends only on ``(seed, key)``, never on which worker runs
    the task or in what order, so serial and parallel runs agree bit-for-bit.
    """
    return np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key))


def derive_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for task ``key`` under run ``seed``."""
    return np.random.default_rng(derive_seed_sequence(seed, *key))


def derive_seed(seed: int, *key: int) -> int:
    """64-bit child seed for task ``key``, for APIs that take a plain integer."""
    state = derive_seed_sequence(seed, *key).generate_state(1, dtype=np.uint64)
    return int(state[0])
