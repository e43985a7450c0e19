"""Seeded 64-bit PRNG for reproducible random fixtures.

The generator is splitmix64 (public domain, Vigna): from a 64-bit state,
each step adds the constant 0x9E3779B97F4A7C15 and applies the finalizer

    z ^= z >> 30; z *= 0xBF58476D1CE4B5B9;
    z ^= z >> 27; z *= 0x94D049BB133111EB;
    z ^= z >> 31;

all mod 2^64.  Streams for (suite, p, instance) are derived by absorbing the
integer keys one at a time: s <- finalize(s XOR key), starting from the user
seed.  Bounded draws use plain modulo (documented; bias is irrelevant at
desk scale), and subsets come from a partial Fisher-Yates shuffle.  Every
draw is integer arithmetic, so fixtures reproduce across platforms and
languages.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4B5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """splitmix64 stream; next() yields 64-bit integers."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        return _finalize(self.state)

    def below(self, n: int) -> int:
        """Uniform-ish draw in [0, n) via modulo reduction."""
        return self.next() % n

    def unit(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next() >> 11) / float(1 << 53)

    def subset(self, p: int, size: int) -> tuple[int, ...]:
        """A size-element subset of {1..p-1} by partial Fisher-Yates, sorted."""
        pool = list(range(1, p))
        size = min(size, len(pool))
        for i in range(size):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return tuple(sorted(pool[:size]))


def stream(seed: int, *keys: int) -> SplitMix64:
    """Derive an independent stream from the seed and integer keys."""
    s = seed & _MASK
    for k in keys:
        s = _finalize(s ^ (k & _MASK))
    return SplitMix64(s)
