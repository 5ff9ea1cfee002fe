"""SplitMix64, the package's only source of randomness.

The generator is counter based: the ``i``-th output (``i = 1, 2, ...``) is
``mix(seed + i * GAMMA mod 2**64)`` with

    GAMMA = 0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

so any implementation following these constants reproduces every graph
bit for bit.  Derived quantities:

* uniform float in [0, 1): ``(x >> 11) * 2**-53``
* integer below ``b``: ``(x * b) >> 64`` (multiply-shift, no rejection)
"""

from __future__ import annotations

import os

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MUL1 = 0xBF58476D1CE4E5B9
MUL2 = 0x94D049BB133111EB

SEED_ENV = "RAINBOW_FORGE_SEED"
DEFAULT_SEED = 0


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * MUL1) & MASK64
    z = ((z ^ (z >> 27)) * MUL2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, bound: int) -> int:
        return (self.next_u64() * bound) >> 64

    def bulk_u64(self, count: int) -> np.ndarray:
        """The next ``count`` outputs as a uint64 array; advances the state."""
        idx = np.arange(1, count + 1, dtype=np.uint64)
        z = idx * np.uint64(GAMMA) + np.uint64(self.state)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MUL2)
        z = z ^ (z >> np.uint64(31))
        self.state = (self.state + count * GAMMA) & MASK64
        return z

    def bulk_uniform(self, count: int) -> np.ndarray:
        return (self.bulk_u64(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, last position first."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_seeds(seed: int, count: int) -> list[int]:
    """Independent child seeds, e.g. one per experiment trial."""
    rng = SplitMix64(seed)
    return [rng.next_u64() for _ in range(count)]


def resolve_seed(flag: int | None) -> int:
    """Command-line flag, else ``$RAINBOW_FORGE_SEED``, else 0."""
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        return int(env.strip(), 0)
    return DEFAULT_SEED
