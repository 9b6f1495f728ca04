import numpy as np


def derive_seed(entropy: int, *key: int) -> int:
    """Return a 64-bit seed for the stream ``key`` under ``entropy``; independent of call order."""
    sequence = np.random.SeedSequence(entropy=entropy, spawn_key=key)
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def derive_rng(entropy: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=entropy, spawn_key=key))
