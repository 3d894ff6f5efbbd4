"""Seeded random stream shared by all stochastic corruptions.

A Stream wraps a xoshiro256++ state initialized from a 64-bit seed through
splitmix64.  Sample draws go through the active backend (compiled or pure
Python); the sequences are identical either way.
"""

from __future__ import annotations

import numpy as np

from . import backend

_MASK64 = 0xFFFFFFFFFFFFFFFF


def seed_state(seed: int) -> np.ndarray:
    """Initial xoshiro256++ state: four splitmix64 outputs from the seed."""
    x = seed & _MASK64
    state = np.empty(4, dtype=np.uint64)
    for i in range(4):
        x = (x + 0x9E3779B97F4A7C15) & _MASK64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        state[i] = z ^ (z >> 31)
    return state


class Stream:
    """One deterministic sample stream; never shared between workers."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed_state(seed)

    def uniforms(self, n: int) -> np.ndarray:
        return backend.uniform_fill(self.state, int(n))

    def normals(self, n: int) -> np.ndarray:
        return backend.normal_fill(self.state, int(n))

    def poissons(self, lam: np.ndarray) -> np.ndarray:
        flat = np.ascontiguousarray(np.asarray(lam, dtype=np.float64).ravel())
        return backend.poisson_fill(self.state, flat)
