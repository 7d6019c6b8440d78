"""Seed derivation and a small counter-based RNG pinned to this package.

numpy's Generator is used for everything statistical (parameter draws,
multinomial sampling), but two things must stay bit-identical across
platforms and numpy releases: the per-run seed derivation and the support
selection of the sparse target. Both run on splitmix64, which is fully
specified by 64-bit integer arithmetic.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(z: int) -> int:
    """One splitmix64 output for counter value z."""
    z = (z + _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_run_seed(base_seed: int, run_index: int) -> int:
    """Decorrelated per-run seed: base_seed XOR splitmix64(run_index)."""
    return (base_seed & _MASK64) ^ splitmix64(run_index)


class SplitMix64:
    """Sequential splitmix64 stream with exact bounded draws."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection, no modulo bias."""
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n
