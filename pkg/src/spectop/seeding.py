"""Counter-based RNG streams keyed by (master seed, trial index).

Every Monte Carlo trial in the package draws from a Philox generator whose
128-bit key is the pair (master_seed, trial_index).  Philox is counter-based,
so trial k is replayable on its own: no generator state from trials 0..k-1 is
needed, and concurrent trials never share a stream.
"""
from __future__ import annotations

import numpy as np


def trial_rng(master_seed: int, trial_index: int = 0) -> np.random.Generator:
    """Independent, replayable stream for one trial."""
    if master_seed < 0 or trial_index < 0:
        raise ValueError("seed and trial index must be non-negative")
    key = np.array([master_seed, trial_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def derive_seed(master_seed: int, trial_index: int) -> int:
    """Single 63-bit seed for trial `trial_index`, recorded in trial rows.

    Downstream samplers are keyed by this value alone, so a row can be
    replayed either from (master_seed, index) or from the stored seed.
    """
    rng = trial_rng(master_seed, trial_index)
    return int(rng.integers(0, 2**63, dtype=np.uint64))
