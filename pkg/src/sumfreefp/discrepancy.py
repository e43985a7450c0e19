"""Coset discrepancies of multiplicative subgroups on sum-free intervals,
coset profiles of arbitrary sets, and the exact identity chain connecting
them to Gauss sums and L(1) values.

Deviations are stored as integers scaled by the subgroup index n
(num = n*count - total), so every identity that is algebraically exact is
checked in exact rational arithmetic; floating tolerances enter only where
L-values do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import Character, gauss_sum
from .errors import NotInDualSet, OddCharacter, ZeroInSet
from .lfunctions import CHI3, l_one_times_small
from .modp import Interval, SubgroupContext

_TWO_PI = 2.0 * math.pi
_SQRT3 = math.sqrt(3.0)


def _clean_set(p: int, A) -> tuple[int, ...]:
    out = sorted({a % p for a in A})
    if out and out[0] == 0:
        raise ZeroInSet("0 is not allowed in the set")
    return tuple(out)


@dataclass(frozen=True)
class DiscrepancyTable:
    """Per-coset deviation of interval occupancy from its mean |I|/n."""

    sub: SubgroupContext
    interval: Interval
    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.sub.n

    def numerators(self) -> list[int]:
        """n * |xi Gamma ^ I| - |I| per coset (delta scaled by n)."""
        size = self.interval.size
        return [self.n * c - size for c in self.counts]

    def delta(self, j: int) -> Fraction:
        return Fraction(self.n * self.counts[j] - self.interval.size, self.n)

    def deltas(self) -> list[Fraction]:
        return [self.delta(j) for j in range(self.n)]


@dataclass(frozen=True)
class CosetProfile:
    """Per-coset deviation of |A ^ xi Gamma| from its mean |A|/n."""

    sub: SubgroupContext
    counts: tuple[int, ...]
    size: int

    @property
    def n(self) -> int:
        return self.sub.n

    def numerators(self) -> list[int]:
        return [self.n * c - self.size for c in self.counts]

    def a(self, j: int) -> Fraction:
        return Fraction(self.n * self.counts[j] - self.size, self.n)

    def profile(self) -> list[Fraction]:
        return [self.a(j) for j in range(self.n)]

    def folded_numerators(self) -> list[int]:
        """Scaled a_xi + a_{-xi} per coset."""
        nums = self.numerators()
        return [nums[j] + nums[self.sub.neg_coset[j]] for j in range(self.n)]


def delta_table(sub: SubgroupContext, interval: Interval) -> DiscrepancyTable:
    labels = sub.coset_of[interval.lo:interval.hi]
    labels = labels[labels >= 0]
    counts = np.bincount(labels, minlength=sub.n)
    return DiscrepancyTable(sub=sub, interval=interval,
                            counts=tuple(int(c) for c in counts))


def coset_profile(A, sub: SubgroupContext) -> CosetProfile:
    elems = _clean_set(sub.p, A)
    labels = sub.coset_of[np.array(elems, dtype=np.int64)] if elems else np.array([], dtype=np.int64)
    counts = np.bincount(labels, minlength=sub.n)
    return CosetProfile(sub=sub, counts=tuple(int(c) for c in counts), size=len(elems))


def _even_dual_terms(sub: SubgroupContext):
    """(j, chi, L(1, conj(chi)*chi3)) for the even nontrivial dual characters."""
    out = []
    for j in range(1, sub.n):
        t = j * sub.d
        if t % 2:
            continue
        chi = Character(sub.parent, t)
        out.append((j, chi, l_one_times_small(chi.conj(), CHI3)))
    return out


def delta_via_series(sub: SubgroupContext) -> list[float]:
    """Reconstruct the thirds-interval deltas from Gauss sums and L-values.

    delta_xi = -(sqrt(3)/2 pi n) * sum over nontrivial dual chi of
    (1 + chi(-1)) G(chi) L(1, conj(chi) chi3) conj(chi)(xi); odd characters
    contribute nothing.
    """
    n = sub.n
    if n == 1:
        return [0.0]
    terms = _even_dual_terms(sub)
    out = np.zeros(n, dtype=np.complex128)
    if terms:
        js = np.array([j for j, _, _ in terms])
        ws = np.array([2.0 * gauss_sum(chi) * lval for _, chi, lval in terms])
        phases = np.exp(-2j * np.pi * np.outer(np.arange(n), js) / n)
        out = phases @ ws
    out *= -_SQRT3 / (_TWO_PI * n)
    return [float(v.real) for v in out]


def parseval_discrepancy(sub: SubgroupContext) -> tuple[Fraction, float]:
    """(lhs, rhs): lhs = sum of delta^2 exactly; rhs from the L-value side,
    (3p/4 pi^2 n) * sum |1+chi(-1)|^2 |L(1, conj(chi) chi3)|^2."""
    from .modp import thirds_interval

    table = delta_table(sub, thirds_interval(sub.p))
    nums = table.numerators()
    lhs = Fraction(sum(v * v for v in nums), sub.n ** 2)
    rhs = 0.0
    for _, _, lval in _even_dual_terms(sub):
        rhs += 4.0 * abs(lval) ** 2
    rhs *= 3.0 * sub.p / (4.0 * math.pi ** 2 * sub.n)
    return lhs, rhs


def extremal_cosets(table: DiscrepancyTable) -> tuple[int, int, int]:
    """(argmax, argmin, argmax-of-|.|) coset indices, smallest index on ties."""
    nums = table.numerators()
    xi_max = xi_min = xi_abs = 0
    for j, v in enumerate(nums):
        if v > nums[xi_max]:
            xi_max = j
        if v < nums[xi_min]:
            xi_min = j
        if abs(v) > abs(nums[xi_abs]):
            xi_abs = j
    return xi_max, xi_min, xi_abs


def dilation_average(A, sub: SubgroupContext, alpha: int,
                     interval: Interval) -> tuple[Fraction, Fraction]:
    """Average of |xA ^ I| over x in coset alpha, both routes, exact.

    lhs: direct dilation and counting.
    rhs: |A||I|/(p-1) + (1/|Gamma|) sum_xi a_xi delta_{alpha xi}.
    The two are equal as rationals (no tolerance).
    """
    p = sub.p
    elems = _clean_set(p, A)
    arr = np.array(elems, dtype=np.int64)
    total = 0
    for x in sub.coset_members(alpha):
        vals = x * arr % p
        total += int(np.count_nonzero((vals >= interval.lo) & (vals < interval.hi)))
    lhs = Fraction(total, sub.d)

    prof = coset_profile(elems, sub)
    table = delta_table(sub, interval)
    a_num = prof.numerators()
    d_num = table.numerators()
    n = sub.n
    cross = sum(a_num[xi] * d_num[(alpha + xi) % n] for xi in range(n))
    rhs = Fraction(len(elems) * interval.size, p - 1) + Fraction(cross, n * n * sub.d)
    return lhs, rhs


def dilation_averages_all(A, sub: SubgroupContext,
                          interval: Interval) -> list[tuple[Fraction, Fraction]]:
    """dilation_average for every coset alpha in one pass (same exact values)."""
    p = sub.p
    elems = _clean_set(p, A)
    arr = np.array(elems, dtype=np.int64)
    per_x = np.zeros(p, dtype=np.int64)
    xs = np.arange(1, p, dtype=np.int64)
    block = max(1, (1 << 22) // max(len(elems), 1))
    for start in range(0, xs.size, block):
        chunk = xs[start:start + block]
        vals = chunk[:, None] * arr[None, :] % p
        per_x[chunk] = np.count_nonzero((vals >= interval.lo) & (vals < interval.hi), axis=1)
    totals = np.bincount(sub.coset_of[1:], weights=per_x[1:], minlength=sub.n).astype(np.int64)

    prof = coset_profile(elems, sub)
    table = delta_table(sub, interval)
    n = sub.n
    cross = _cross_sums(prof.numerators(), table.numerators(), n)
    base = Fraction(len(elems) * interval.size, p - 1)
    return [(Fraction(int(totals[alpha]), sub.d), base + Fraction(cross[alpha], n * n * sub.d))
            for alpha in range(n)]


def _cross_sums(a_num: list[int], d_num: list[int], n: int) -> list[int]:
    """S_alpha = sum_xi a_num[xi] * d_num[(alpha+xi) % n], all alpha (exact)."""
    a = np.array(a_num, dtype=np.int64)
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    M = np.array(d_num, dtype=np.int64)[idx]
    return [int(v) for v in M @ a]


def _profile_transform(prof: CosetProfile) -> np.ndarray:
    """sum_xi a_xi conj(chi_j)(xi) for all dual indices j (complex vector)."""
    n = prof.n
    a = np.array(prof.numerators(), dtype=np.float64) / n
    phases = np.exp(-2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n)
    return phases @ a


def weighted_parseval(A, sub: SubgroupContext) -> tuple[Fraction, float]:
    """(lhs, rhs) for the profile-weighted discrepancy energy.

    lhs = sum over alpha of (sum_xi a_xi delta_{alpha xi})^2, exact.
    rhs = (3/4 pi^2 n) sum |1+chi(-1)|^2 |G|^2 |L|^2 |sum_xi a_xi conj(chi)(xi)|^2.
    """
    from .modp import thirds_interval

    elems = _clean_set(sub.p, A)
    prof = coset_profile(elems, sub)
    table = delta_table(sub, thirds_interval(sub.p))
    n = sub.n
    cross = _cross_sums(prof.numerators(), table.numerators(), n)
    lhs = Fraction(sum(s * s for s in cross), n ** 4)

    ahat = _profile_transform(prof)
    rhs = 0.0
    for j, chi, lval in _even_dual_terms(sub):
        rhs += 4.0 * abs(gauss_sum(chi)) ** 2 * abs(lval) ** 2 * abs(ahat[j]) ** 2
    rhs *= 3.0 / (4.0 * math.pi ** 2 * n)
    return lhs, float(rhs)


def folded_energy_identity(A, sub: SubgroupContext) -> tuple[float, Fraction]:
    """Exact identity: summing |1+chi(-1)|^2 |ahat(chi)|^2 over the full dual
    set equals n * sum_xi (a_xi + a_{-xi})^2 (folding halves the spectrum)."""
    elems = _clean_set(sub.p, A)
    prof = coset_profile(elems, sub)
    n = sub.n
    ahat = _profile_transform(prof)
    lhs = 0.0
    for j in range(n):
        if (j * sub.d) % 2 == 0:
            lhs += 4.0 * abs(ahat[j]) ** 2
    rhs = Fraction(sum(v * v for v in prof.folded_numerators()), n)
    return float(lhs), rhs


def even_char_sum_bound(A, sub: SubgroupContext, eta: Character) -> tuple[float, float]:
    """lhs = |sum_{x in A} eta(x)|^2, rhs = (n/2) sum (a_xi + a_{-xi})^2.

    Contract: lhs <= rhs (+1e-6 slack in tests); eta must be an even
    nontrivial member of the subgroup's dual set.
    """
    if eta.t == 0 or eta.t % sub.d != 0:
        raise NotInDualSet(f"chi_{eta.t} is not trivial on the subgroup")
    if not eta.is_even:
        raise OddCharacter("the bound is stated for even characters")
    elems = _clean_set(sub.p, A)
    vals = eta.values()
    lhs = abs(complex(np.sum(vals[np.array(elems, dtype=np.int64)]))) ** 2 if elems else 0.0
    prof = coset_profile(elems, sub)
    rhs = Fraction(sum(v * v for v in prof.folded_numerators()), 2 * sub.n)
    return float(lhs), float(rhs)
