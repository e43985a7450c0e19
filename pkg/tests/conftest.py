"""Shared test helpers: an independent brute-force solution-free oracle and
a seeded random-set drawer (splitmix64, same scheme the harness documents)."""

import itertools

import numpy as np

from sumfreefp.rng import stream


def brute_force_sf(p: int, A, k: int) -> int:
    """Maximum solution-free subset size by full 2^|A| enumeration.

    Independent of the package's search: forbidden tuples are enumerated
    directly from the definition, subsets are swept as bitmasks, and the
    answer is the max popcount over unblocked masks.
    """
    elems = sorted(set(A))
    m = len(elems)
    pos = {a: i for i, a in enumerate(elems)}
    bad = set()
    for xs in itertools.combinations_with_replacement(elems, k):
        y = sum(xs) % p
        if y in pos:
            mask = 1 << pos[y]
            for x in xs:
                mask |= 1 << pos[x]
            bad.add(mask)
    subsets = np.arange(1 << m, dtype=np.uint32)
    blocked = np.zeros(1 << m, dtype=bool)
    for mask in bad:
        blocked |= (subsets & np.uint32(mask)) == np.uint32(mask)
    pop = np.zeros(1 << m, dtype=np.uint8)
    for b in range(m):
        pop += ((subsets >> np.uint32(b)) & np.uint32(1)).astype(np.uint8)
    return int(pop[~blocked].max())


def seeded_set(seed: int, tag: int, p: int, i: int, max_size: int = 16):
    rng = stream(seed, tag, p, i)
    hi = min(max_size, p - 1)
    size = 4 + rng.below(hi - 3) if hi > 4 else hi
    return rng.subset(p, size)
