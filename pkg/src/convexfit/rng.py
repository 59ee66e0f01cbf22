"""Counter-based splittable random streams.

Every stochastic routine in the package draws from a Philox generator keyed
by (seed, *key): the same key always yields the same stream, independent of
what any other key consumed. Studies key replicates as (seed, n_index,
replicate, role) so each replicate is individually reproducible.
"""

from __future__ import annotations

import numpy as np

# role tags, appended as the last key component
ROLE_DESIGN = 0
ROLE_NOISE = 1
ROLE_SEARCH = 2
ROLE_MC = 3


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for (seed, *key)."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *key: int) -> int:
    """Fold (seed, *key) into a fresh 63-bit integer seed."""
    return int(substream(seed, *key).integers(0, 2**63))
