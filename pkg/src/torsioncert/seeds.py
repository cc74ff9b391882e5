"""Deterministic per-index random streams from one 64-bit master seed.

Every sampling routine takes (seed, index) and gets its own independent
stream, so batches can run in any order, or in parallel, and still produce
identical output.
"""

import random

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state):
    """One output of the splitmix64 sequence at the given state."""
    z = (state + _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def rng_for(seed, index):
    """A stdlib Random instance for stream ``index`` of ``seed``."""
    return random.Random(splitmix64((seed & _MASK) ^ splitmix64(index)))
