"""
Seed to random-stream mapping.

Every stochastic consumer derives its generator from the single 64-bit run seed:

    Generator(Philox(SeedSequence(seed, spawn_key=(stream, *counters))))

SeedSequence hashing and Philox are both counter-based and stable across numpy
releases, so the mapping below is part of the model-file contract.
"""

from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    PROJECTION = 0
    WEIGHT_INIT = 1
    SHUFFLE = 2
    STDP = 3
    SYNTHETIC = 4


def generator_for(seed: int, stream: Stream, *counters: int) -> np.random.Generator:
    """Return the generator for `stream` (and optional counters such as epoch or sample index)."""
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream), *(int(c) for c in counters)))
    return np.random.Generator(np.random.Philox(sequence))
