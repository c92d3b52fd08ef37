"""Portable seeded uniform generator.

Seeds are expanded with SplitMix64 (increment 0x9E3779B97F4A7C15, mixers
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB), then samples come from
xorshift64* (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D).  The top
53 bits of each output x give the sample (x >> 11) * 2**-52 - 1 in [-1, 1).
The constants are fixed so that the same seed reproduces the same stream in
any language.
"""
import numpy as np

from . import _kernels

__all__ = ['splitmix64', 'Xorshift64Star', 'uniform_sequence']

_MASK = (1 << 64) - 1


def splitmix64(seed):
    z = (seed + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    z ^= z >> 31
    return z or 0x9E3779B97F4A7C15


class Xorshift64Star:
    """Pure-Python reference implementation of the stream."""

    def __init__(self, seed):
        if not 0 <= seed <= _MASK:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = splitmix64(seed)

    def next_u64(self):
        s = self.state
        s ^= s >> 12
        s ^= (s << 25) & _MASK
        s ^= s >> 27
        self.state = s
        return (s * 0x2545F4914F6CDD1D) & _MASK

    def uniform(self):
        return (self.next_u64() >> 11) * 2.0 ** -52 - 1.0


def uniform_sequence(seed, n):
    """``n`` samples in [-1, 1) for ``seed`` (compiled fast path)."""
    if not 0 <= seed <= _MASK:
        raise ValueError("seed must be an unsigned 64-bit integer")
    out, _ = _kernels.xorshift64star_uniform(np.uint64(splitmix64(seed)), int(n))
    return out
