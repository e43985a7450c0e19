"""Exact and lower-bound computation of maximal solution-free subset sizes.

For arity k, a subset S is solution-free when no x_1 + ... + x_k = y holds
with all of x_1..x_k, y in S; the x_i may repeat (so 2x = y is forbidden at
k = 2).  The exact search is a branch-and-bound over the hypergraph whose
hyperedges are the minimal forbidden element sets, seeded with the dilation
lower bound as the initial incumbent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapExceeded, UnsupportedArity, ZeroInSet
from .modp import Interval, PrimeContext, eighths_interval, thirds_interval

#: Hard caps on |A| for the exact search.
EXACT_CAPS = {2: 40, 3: 28}


def _clean_set(p: int, A) -> tuple[int, ...]:
    out = sorted({a % p for a in A})
    if out and out[0] == 0:
        raise ZeroInSet("0 is not allowed in the set")
    return tuple(out)


def _check_arity(k: int) -> None:
    if k not in (2, 3):
        raise UnsupportedArity(f"arity {k} not supported (k in {{2, 3}})")


def is_solution_free(p: int, S, k: int):
    """(True, None) if S has no solution of x_1+..+x_k = y, else
    (False, witness) with witness = (x_1, .., x_k, y)."""
    _check_arity(k)
    elems = sorted({x % p for x in S})
    member = set(elems)
    for xs in itertools.combinations_with_replacement(elems, k):
        y = sum(xs) % p
        if y in member:
            return False, (*xs, y)
    return True, None


def forbidden_sets(p: int, elems: tuple[int, ...], k: int) -> list[frozenset[int]]:
    """Minimal forbidden element sets: {x_1,..,x_k, y} collapsed to a set."""
    member = set(elems)
    seen: set[frozenset[int]] = set()
    for xs in itertools.combinations_with_replacement(elems, k):
        y = sum(xs) % p
        if y in member:
            seen.add(frozenset((*xs, y)))
    return sorted(seen, key=lambda e: sorted(e))


@dataclass(frozen=True)
class SumFreeReport:
    """Result of a solution-free subset computation."""

    p: int
    A: tuple[int, ...]
    k: int
    value: int
    witness: tuple[int, ...]
    exact: bool
    psi: Fraction  # value - |A|/(k+1)

    @property
    def ratio(self) -> float:
        return self.value / len(self.A) if self.A else 0.0


def _report(p: int, elems: tuple[int, ...], k: int, value: int,
            witness, exact: bool) -> SumFreeReport:
    psi = Fraction(value) - Fraction(len(elems), k + 1)
    return SumFreeReport(p=p, A=elems, k=k, value=value,
                         witness=tuple(sorted(witness)), exact=exact, psi=psi)


def sf_dilation_bound(p: int, A, interval: Interval):
    """(value, dilator, subset): value = max_x |xA ^ interval|, achieved at
    the smallest dilator; subset = {a in A : dilator*a in interval} is
    solution-free for the interval's arity and so lower-bounds sf."""
    elems = _clean_set(p, A)
    counts = np.zeros(p, dtype=np.int64)
    for a in elems:
        inv = pow(a, p - 2, p)
        idx = inv * np.arange(interval.lo, interval.hi, dtype=np.int64) % p
        counts[idx] += 1
    dilator = int(np.argmax(counts[1:])) + 1
    value = int(counts[dilator])
    subset = tuple(a for a in elems if a * dilator % p in interval)
    return value, dilator, subset


def _interval_for_arity(p: int, k: int) -> Interval:
    return thirds_interval(p) if k == 2 else eighths_interval(p)


def sf_exact(p: int, A, k: int, cap: int | None = None) -> SumFreeReport:
    """Exact maximal solution-free subset size by branch and bound.

    The incumbent starts at the dilation bound; the search branches on
    elements in descending forbidden-set degree (ascending residue on ties),
    prunes on included + remaining <= incumbent, and propagates exclusions
    through edges with a single undecided element.  Raises CapExceeded when
    |A| exceeds the (hard) cap.
    """
    _check_arity(k)
    elems = _clean_set(p, A)
    limit = EXACT_CAPS[k] if cap is None else cap
    if len(elems) > limit:
        raise CapExceeded(f"|A| = {len(elems)} exceeds the cap {limit} for k = {k}")
    if not elems:
        return _report(p, elems, k, 0, (), True)

    m = len(elems)
    index_of = {a: i for i, a in enumerate(elems)}
    edges_raw = forbidden_sets(p, elems, k)

    degree = [0] * m
    for e in edges_raw:
        for a in e:
            degree[index_of[a]] += 1

    # Fixed branch order: descending degree, then ascending residue.
    order = sorted(range(m), key=lambda i: (-degree[i], elems[i]))
    pos = {orig: rank for rank, orig in enumerate(order)}
    residues = [elems[orig] for orig in order]
    edges = [0] * len(edges_raw)
    for idx, e in enumerate(edges_raw):
        mask = 0
        for a in e:
            mask |= 1 << pos[index_of[a]]
        edges[idx] = mask
    edges_at = [[] for _ in range(m)]
    for mask in edges:
        mm = mask
        while mm:
            lsb = mm & -mm
            edges_at[lsb.bit_length() - 1].append(mask)
            mm ^= lsb

    value0, _, subset0 = sf_dilation_bound(p, elems, _interval_for_arity(p, k))
    best_value = value0
    best_mask = 0
    for a in subset0:
        best_mask |= 1 << pos[index_of[a]]

    full = (1 << m) - 1

    def dfs(start: int, included: int, inc_count: int, alive: int) -> None:
        nonlocal best_value, best_mask
        if inc_count + alive.bit_count() <= best_value:
            return
        i = start
        while i < m and not (alive >> i) & 1:
            i += 1
        if i >= m:
            if inc_count > best_value:
                best_value = inc_count
                best_mask = included
            return
        bit = 1 << i
        # Include element i, then propagate single-undecided edges.
        new_inc = included | bit
        new_alive = alive & ~bit
        ok = True
        for mask in edges_at[i]:
            rem = mask & ~new_inc
            if rem == 0:
                ok = False
                break
            if rem.bit_count() == 1 and rem & new_alive:
                new_alive &= ~rem
        if ok:
            if inc_count + 1 > best_value:
                best_value = inc_count + 1
                best_mask = new_inc
            dfs(i + 1, new_inc, inc_count + 1, new_alive)
        # Exclude element i.
        dfs(i + 1, included, inc_count, alive & ~bit)

    dfs(0, 0, 0, full)

    witness = tuple(residues[i] for i in range(m) if (best_mask >> i) & 1)
    return _report(p, elems, k, best_value, witness, True)


def sigma_averages(ctx: PrimeContext, A) -> tuple[Fraction, Fraction]:
    """Exact average of |xA ^ I| over the non-residues (sigma1) and over the
    residues (sigma2), I the thirds interval, via the closed forms
    sigma1 = (|A_Q||N^I| + |A_N||Q^I|)/|N| and the mirrored sigma2."""
    p = ctx.p
    elems = _clean_set(p, A)
    interval = thirds_interval(p)
    a_q = sum(1 for a in elems if ctx.legendre(a) == 1)
    a_n = len(elems) - a_q
    q_i = sum(1 for x in interval.members if ctx.legendre(x) == 1)
    n_i = interval.size - q_i
    half = (p - 1) // 2
    sigma1 = Fraction(a_q * n_i + a_n * q_i, half)
    sigma2 = Fraction(a_q * q_i + a_n * n_i, half)
    return sigma1, sigma2
