"""Seeded, order-independent random streams.

Every random draw in the package comes from a Philox (counter-based)
bit generator keyed by ``SeedSequence(seed, spawn_key=keys)``.  The keys
identify the consumer (replicate index, grid index, ...), so any stream can
be regenerated in isolation and parallel evaluation matches sequential
evaluation exactly.
"""

from __future__ import annotations

import numpy as np

MAX_SEED = 2**64 - 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def generator(seed: int, *keys: int) -> np.random.Generator:
    """Return the generator for stream ``keys`` under ``seed``."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *keys: int) -> int:
    """A 64-bit child seed, used when a whole sub-computation needs its own seed."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
