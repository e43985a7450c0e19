"""Numeric L(1, psi) for non-principal Dirichlet characters, and closed-form
reconstruction of interval character sums from L-values.

L(1, psi) is evaluated by the exact finite form

    L(1, psi) = -(1/q) * sum_{r=1}^{q-1} psi(r) * psi0(r/q),

valid whenever the character values sum to zero over a period (psi0 is the
digamma function).  A truncated-series evaluator with a rigorous Abel-summation
tail bound is kept as an independent cross-check; it is far too slow to reach
1e-6 on its own (the tail forces ~ q/tol terms), which is why the digamma form
is the primary route.

The digamma kernel follows the classical scheme: shift the argument up by the
recurrence psi0(x) = psi0(x+1) - 1/x until it is >= 10, then apply the
Bernoulli asymptotic series.  Truncating after the B_14 term leaves an error
below 5e-17 at argument 10, so the kernel is good to ~1e-15, well under the
1e-12 budget.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .characters import Character, gauss_sum, legendre_character
from .errors import (
    ModulusTooLarge,
    OutOfRange,
    PrincipalCharacter,
    UnsupportedParity,
)
from .modp import EIGHTHS, THIRDS, Interval, PrimeContext

MAX_L_MODULUS = 2**23

_SQRT2 = math.sqrt(2.0)

# Bernoulli coefficients B_{2k}/(2k) for k = 1..7.
_BERN = (
    1.0 / 12.0,
    1.0 / 120.0,
    1.0 / 252.0,
    1.0 / 240.0,
    1.0 / 132.0,
    691.0 / 32760.0,
    1.0 / 12.0,
)


def _digamma_unit(x: np.ndarray) -> np.ndarray:
    """Vectorized digamma for arguments in (0, 1]."""
    x = np.asarray(x, dtype=np.float64)
    s = np.zeros_like(x)
    for j in range(10):
        s -= 1.0 / (x + j)
    y = x + 10.0
    s += np.log(y) - 0.5 / y
    y2 = 1.0 / (y * y)
    c1, c2, c3, c4, c5, c6, c7 = _BERN
    s -= y2 * (c1 - y2 * (c2 - y2 * (c3 - y2 * (c4 - y2 * (c5 - y2 * (c6 - y2 * c7))))))
    return s


def digamma(a: int, q: int) -> float:
    """psi0(a/q) for integers 0 < a <= q.

    Absolute error <= 1e-12 wherever the value is representable that finely;
    as a/q -> 0 the value grows like -q/a and accuracy is a few ulps
    (relative ~1e-15), which the 1/q factor in the L(1) form absorbs.
    """
    if not (0 < a <= q):
        raise OutOfRange(f"need 0 < a <= q, got a={a}, q={q}")
    return float(_digamma_unit(np.array([a / q]))[0])


@functools.lru_cache(maxsize=8)
def _digamma_table(q: int) -> np.ndarray:
    """psi0(r/q) for r = 1..q-1, at index r (index 0 unused)."""
    table = np.empty(q, dtype=np.float64)
    table[0] = 0.0
    table[1:] = _digamma_unit(np.arange(1, q) / q)
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class SmallModulusCharacter:
    """Real character given by an explicit value table on {0..q0-1}."""

    modulus: int
    table: tuple[int, ...]
    name: str

    def __call__(self, m: int) -> int:
        return self.table[m % self.modulus]

    @property
    def is_principal(self) -> bool:
        return all(self.table[r] == 1 for r in range(self.modulus)
                   if math.gcd(r, self.modulus) == 1)

    @property
    def is_even(self) -> bool:
        return self.table[self.modulus - 1] == 1

    def values(self) -> np.ndarray:
        return np.array(self.table, dtype=np.float64)


#: Non-principal character mod 3: period three, chi3(1)=1, chi3(-1)=-1.
CHI3 = SmallModulusCharacter(3, (0, 1, -1), "chi3")
#: Non-principal character mod 4 (the Leibniz character).
CHI4 = SmallModulusCharacter(4, (0, 1, 0, -1), "chi4")
#: Real character mod 8 with chi8(+-1)=1, chi8(+-3)=-1, zero on evens.
CHI8 = SmallModulusCharacter(8, (0, 1, 0, -1, 0, -1, 0, 1), "chi8")


def delta0_mod8(m: int) -> int:
    return 1 if m % 8 == 0 else 0


def delta4_mod8(m: int) -> int:
    return 1 if m % 8 == 4 else 0


def cos_eighth_identity_max_error() -> float:
    """Max residual over the 16 cases of the two cosine/chi8 identities:
    cos(pi n/4)  =  chi8(n)/sqrt(2) + d0(n) - d4(n)
    cos(3pi n/4) = -chi8(n)/sqrt(2) + d0(n) - d4(n)
    """
    worst = 0.0
    for n in range(8):
        base = delta0_mod8(n) - delta4_mod8(n)
        worst = max(worst, abs(math.cos(math.pi * n / 4) - (CHI8(n) / _SQRT2 + base)))
        worst = max(worst, abs(math.cos(3 * math.pi * n / 4) - (-CHI8(n) / _SQRT2 + base)))
    return worst


@dataclass(frozen=True)
class ProductCharacter:
    """psi(m) = chi(m mod p) * small(m mod q0), a character mod q = p*q0."""

    chi: Character
    small: SmallModulusCharacter

    @property
    def modulus(self) -> int:
        return self.chi.p * self.small.modulus

    @property
    def is_principal(self) -> bool:
        return self.chi.is_principal and self.small.is_principal

    @property
    def is_even(self) -> bool:
        return self.chi.is_even == self.small.is_even

    def __call__(self, m: int) -> complex:
        return self.chi(m) * self.small(m)

    def values(self) -> np.ndarray:
        q = self.modulus
        r = np.arange(q)
        return self.chi.values()[r % self.chi.p] * self.small.values()[r % self.small.modulus]


AnyCharacter = Union[Character, ProductCharacter, SmallModulusCharacter]


def _modulus_of(psi) -> int:
    if isinstance(psi, Character):
        return psi.p
    modulus = getattr(psi, "modulus", None)
    if modulus is None:
        raise TypeError(f"not a character: {psi!r}")
    return int(modulus)


def l_one(psi: AnyCharacter) -> complex:
    """L(1, psi) by the digamma finite form; absolute error <= 1e-9."""
    if psi.is_principal:
        raise PrincipalCharacter("L(1, chi_0) diverges")
    q = _modulus_of(psi)
    if q > MAX_L_MODULUS:
        raise ModulusTooLarge(f"modulus {q} exceeds {MAX_L_MODULUS}")
    vals = np.asarray(psi.values(), dtype=np.complex128)
    dig = _digamma_table(q)
    return complex(-(np.dot(vals[1:], dig[1:])) / q)


def l_one_truncated(psi: AnyCharacter, M: int) -> tuple[complex, float]:
    """Partial series sum_{m<=M} psi(m)/m plus a rigorous Abel tail bound.

    The partial sums of psi are periodic, so the tail satisfies
    |L - value| <= max_r |P(r) - P(M mod q)| / (M+1),
    with P the within-period prefix sums.
    """
    if psi.is_principal:
        raise PrincipalCharacter("series diverges")
    q = _modulus_of(psi)
    vals = np.asarray(psi.values(), dtype=np.complex128)
    total = 0j
    for r in range(q):
        v = vals[r]
        if v == 0:
            continue
        start = 1 if r == 0 else 0
        js = np.arange(start, (M - r) // q + 1, dtype=np.float64)
        if js.size:
            total += v * float(np.sum(1.0 / (r + q * js)))
    prefix = np.concatenate(([0j], np.cumsum(vals[1:])))
    tail = float(np.max(np.abs(prefix - prefix[M % q]))) / (M + 1)
    return complex(total), tail


@functools.lru_cache(maxsize=8192)
def _l_one_times_small_cached(p: int, t: int, small_name: str) -> complex:
    from .modp import build_context

    small = {c.name: c for c in (CHI3, CHI4, CHI8)}[small_name]
    return l_one(ProductCharacter(Character(build_context(p), t), small))


def l_one_times_small(chi: Character, small: SmallModulusCharacter) -> complex:
    """L(1, chi * small), cached by (p, t, small) across repeated sweeps."""
    return _l_one_times_small_cached(chi.p, chi.t, small.name)


def interval_sum_via_L(chi: Character, interval: Interval) -> complex:
    """Closed-form value of sum_{x in interval} chi(x) through L(1, .).

    thirds:  -(sqrt(3)/2pi) * G(chi) * L(1, conj(chi)*chi3) * (1 + chi(-1));
    eighths: (sqrt(2)/(pi i)) * G(chi) * L(1, conj(chi)*chi8), odd chi only.
    """
    if chi.is_principal:
        raise PrincipalCharacter("no closed form for the principal character")
    if interval.kind == THIRDS:
        if not chi.is_even:
            return 0j
        lval = l_one_times_small(chi.conj(), CHI3)
        return -(math.sqrt(3.0) / (2 * math.pi)) * gauss_sum(chi) * lval * 2.0
    if interval.kind == EIGHTHS:
        if chi.is_even:
            raise UnsupportedParity("eighths closed form needs an odd character")
        lval = l_one_times_small(chi.conj(), CHI8)
        return gauss_sum(chi) * _SQRT2 / (math.pi * 1j) * lval
    raise OutOfRange(f"no closed form for interval kind {interval.kind!r}")


def legendre_third_identity(ctx: PrimeContext) -> tuple[int, float]:
    """(lhs, rhs) with lhs = sum_{1<=x<p/3} (x/p) exact and
    rhs = sqrt(3p)/(2pi) * L(1, rho*chi3).

    The two agree (<= 1e-6) exactly when p = 1 mod 4; for p = 3 mod 4 the sum
    is instead given by legendre_third_via_rho below.
    """
    p = ctx.p
    lhs = sum(ctx.legendre(x) for x in range(1, p // 3 + 1))
    rho = legendre_character(ctx)
    rhs = math.sqrt(3.0 * p) / (2 * math.pi) * l_one_times_small(rho, CHI3).real
    return lhs, rhs


def legendre_third_via_rho(ctx: PrimeContext) -> float:
    """Closed form of sum_{1<=x<p/3} (x/p) for p = 3 mod 4:
    (sqrt(p)/pi) * L(1, rho) * (3 - rho(3))/2, from the odd-character
    expansion of the prefix sum (the cosine series collapses to a finite
    L-combination along the residue classes mod 3)."""
    if ctx.p % 4 != 3:
        raise UnsupportedParity("closed form via L(1, rho) needs p = 3 mod 4")
    rho = legendre_character(ctx)
    lval = l_one(rho).real
    return math.sqrt(ctx.p) / math.pi * lval * (3 - ctx.legendre(3)) / 2.0


def legendre_prefix_sum(ctx: PrimeContext, num: int, den: int) -> int:
    """Exact sum_{1 <= x <= num*p/den} (x/p)."""
    return sum(ctx.legendre(x) for x in range(1, num * ctx.p // den + 1))


def legendre_prefix_sum_via_L(ctx: PrimeContext, num: int, den: int) -> float:
    """Closed form of the prefix sum S(num/den) at den = 3.

    p = 3 mod 4 (odd rho): S(1/3) = S(2/3) = (sqrt(p)/pi) L(1,rho) (3-rho(3))/2.
    p = 1 mod 4 (even rho): S(1/3) = -S(2/3) = sqrt(3p)/(2pi) L(1, rho chi3).
    """
    if den != 3 or num not in (1, 2):
        raise OutOfRange("only alpha in {1/3, 2/3} has a wired closed form")
    p = ctx.p
    if p % 4 == 3:
        return legendre_third_via_rho(ctx)
    rho = legendre_character(ctx)
    s13 = math.sqrt(3.0 * p) / (2 * math.pi) * l_one_times_small(rho, CHI3).real
    return s13 if num == 1 else -s13
