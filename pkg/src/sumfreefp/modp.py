"""Residue arithmetic mod an odd prime: primitive roots, discrete logs,
multiplicative subgroups and their cosets, and the two sum-free intervals.

A :class:`PrimeContext` carries the full discrete-log table for F_p*, built
once by iterating powers of the smallest primitive root.  Everything here is
immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    IndexDoesNotDivide,
    NotPrime,
    OutOfRange,
    PrimeTooLarge,
    PrimeTooSmall,
)

#: Desk-scale cap on the prime modulus (the dlog table is O(p) memory).
MAX_PRIME = 2**20

# Deterministic Miller-Rabin witnesses, sufficient for every n < 1_373_653,
# which covers the MAX_PRIME cap with room to spare.
_MR_WITNESSES = (2, 3)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n <= 2**20 (Miller-Rabin, bases 2, 3)."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7):
        if n == small:
            return True
        if n % small == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_in_range(lo: int, hi: int, residue: tuple[int, int] | None = None) -> list[int]:
    """Primes p with lo <= p <= hi (and p % residue[1] == residue[0] if given)."""
    if hi < 2 or hi < lo:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, int(hi ** 0.5) + 1):
        if sieve[q]:
            sieve[q * q::q] = False
    ps = [int(p) for p in np.nonzero(sieve)[0] if p >= lo]
    if residue is not None:
        r, m = residue
        ps = [p for p in ps if p % m == r % m]
    return ps


def divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(p: int) -> int:
    """Smallest g generating F_p* (deterministic, reproducible across runs)."""
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise NotPrime(f"no primitive root found; {p} is not prime")


@dataclass(frozen=True)
class PrimeContext:
    """Ambient multiplicative structure of F_p*.

    Attributes:
        p: odd prime > 3.
        g: smallest primitive root mod p.
        dlog: int array of length p; dlog[x] = k with g**k == x (mod p) for
            x in 1..p-1, and dlog[0] = -1.
        g_pow: int array of length p-1; g_pow[k] = g**k mod p (the inverse
            permutation of dlog).
        root_pm1: complex array, root_pm1[k] = exp(2*pi*i*k/(p-1)).
        root_p: complex array, root_p[k] = exp(2*pi*i*k/p).
    """

    p: int
    g: int
    dlog: np.ndarray = field(repr=False)
    g_pow: np.ndarray = field(repr=False)
    root_pm1: np.ndarray = field(repr=False)
    root_p: np.ndarray = field(repr=False)

    def legendre(self, x: int) -> int:
        """Quadratic-residue symbol: 0 at 0, +1 on squares, -1 otherwise."""
        x %= self.p
        if x == 0:
            return 0
        return -1 if self.dlog[x] & 1 else 1

    def inverse(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise OutOfRange("0 has no inverse")
        return int(self.g_pow[(self.p - 1 - self.dlog[x]) % (self.p - 1)])


@functools.lru_cache(maxsize=64)
def _build_context_cached(p: int) -> PrimeContext:
    g = smallest_primitive_root(p)
    dlog = np.full(p, -1, dtype=np.int64)
    g_pow = np.empty(p - 1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        g_pow[k] = x
        dlog[x] = k
        x = x * g % p
    ks = np.arange(p - 1)
    root_pm1 = np.exp(2j * np.pi * ks / (p - 1))
    root_p = np.exp(2j * np.pi * np.arange(p) / p)
    dlog.setflags(write=False)
    g_pow.setflags(write=False)
    root_pm1.setflags(write=False)
    root_p.setflags(write=False)
    return PrimeContext(p=p, g=g, dlog=dlog, g_pow=g_pow,
                        root_pm1=root_pm1, root_p=root_p)


def build_context(p: int) -> PrimeContext:
    """Validate p and build (or fetch from cache) its PrimeContext.

    Raises NotPrime / PrimeTooSmall / PrimeTooLarge.
    """
    if not isinstance(p, int):
        raise NotPrime(f"{p!r} is not an integer")
    if p > MAX_PRIME:
        raise PrimeTooLarge(f"p={p} exceeds the cap {MAX_PRIME}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p <= 3:
        raise PrimeTooSmall(f"p={p}; need an odd prime > 3")
    return _build_context_cached(p)


def legendre(ctx: PrimeContext, x: int) -> int:
    return ctx.legendre(x)


@dataclass(frozen=True)
class SubgroupContext:
    """The unique multiplicative subgroup of index n, with its coset structure.

    Cosets are indexed 0..n-1; coset j is g**j * Gamma, i.e. the residues x
    with dlog(x) == j (mod n).  Coset index multiplication is addition mod n.

    Attributes:
        parent: the PrimeContext.
        d: subgroup order |Gamma|.
        n: index (p-1)/d.
        members: frozenset of the subgroup's residues.
        coset_reps: tuple of n residues, the smallest member of each coset;
            coset_reps[0] == 1 represents Gamma itself.
        coset_of: int array of length p; coset index for x in 1..p-1, -1 at 0.
        contains_minus_one: whether -1 is in the subgroup.
        neg_coset: tuple pairing each coset index with the index of its
            negation; an involution, the identity iff contains_minus_one.
    """

    parent: PrimeContext
    d: int
    n: int
    members: frozenset[int]
    coset_reps: tuple[int, ...]
    coset_of: np.ndarray = field(repr=False)
    contains_minus_one: bool = False
    neg_coset: tuple[int, ...] = ()

    @property
    def p(self) -> int:
        return self.parent.p

    def coset_members(self, j: int) -> list[int]:
        """Residues of coset j, ascending."""
        return [int(x) for x in np.nonzero(self.coset_of == j)[0]]

    def coset_index(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise OutOfRange("0 lies in no coset")
        return int(self.coset_of[x])


@functools.lru_cache(maxsize=256)
def _subgroup_cached(p: int, n: int) -> SubgroupContext:
    ctx = _build_context_cached(p)
    d = (p - 1) // n
    coset_of = np.where(ctx.dlog >= 0, ctx.dlog % n, -1)
    members = frozenset(int(x) for x in ctx.g_pow[::n])
    reps = tuple(int(np.nonzero(coset_of == j)[0][0]) for j in range(n))
    half = (p - 1) // 2
    neg = tuple((j + half) % n for j in range(n))
    coset_of.setflags(write=False)
    return SubgroupContext(
        parent=ctx, d=d, n=n, members=members, coset_reps=reps,
        coset_of=coset_of, contains_minus_one=(half % n == 0), neg_coset=neg,
    )


def subgroup_of_index(ctx: PrimeContext, n: int) -> SubgroupContext:
    """The unique subgroup Gamma with (p-1)/|Gamma| == n.

    Raises IndexDoesNotDivide unless n >= 1 and n | p-1.
    """
    if n < 1 or (ctx.p - 1) % n != 0:
        raise IndexDoesNotDivide(f"index {n} does not divide p-1 = {ctx.p - 1}")
    return _subgroup_cached(ctx.p, n)


THIRDS = "thirds"
EIGHTHS = "eighths"
CUSTOM = "custom"


@dataclass(frozen=True)
class Interval:
    """An integer interval {lo, .., hi-1} viewed inside F_p.

    The two named kinds:
      * thirds:  [p/3, 2p/3), free of solutions to x + y = z;
      * eighths: [p/8, 3p/8), free of solutions to x1 + x2 + x3 = y.
    Since p is coprime to 6 the real endpoints are never integers, so the
    closed/open distinction at the boundary is immaterial; the member count is
    floor(2p/3) - floor(p/3) (thirds) resp. floor(3p/8) - floor(p/8) (eighths).
    """

    kind: str
    p: int
    lo: int
    hi: int

    @property
    def members(self) -> range:
        return range(self.lo, self.hi)

    @property
    def size(self) -> int:
        return self.hi - self.lo

    def __contains__(self, x: int) -> bool:
        return self.lo <= x % self.p < self.hi

    def indicator(self) -> np.ndarray:
        ind = np.zeros(self.p, dtype=np.int64)
        ind[self.lo:self.hi] = 1
        return ind


def thirds_interval(p: int) -> Interval:
    return Interval(kind=THIRDS, p=p, lo=p // 3 + 1, hi=-(-2 * p // 3))


def eighths_interval(p: int) -> Interval:
    return Interval(kind=EIGHTHS, p=p, lo=p // 8 + 1, hi=-(-3 * p // 8))


def custom_interval(p: int, lo: int, hi: int) -> Interval:
    if not (0 <= lo < hi <= p):
        raise OutOfRange(f"need 0 <= lo < hi <= p, got [{lo}, {hi}) mod {p}")
    return Interval(kind=CUSTOM, p=p, lo=lo, hi=hi)


def interval_of_kind(p: int, kind: str) -> Interval:
    if kind == THIRDS:
        return thirds_interval(p)
    if kind == EIGHTHS:
        return eighths_interval(p)
    raise OutOfRange(f"unknown interval kind {kind!r}")
