import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sumfreefp import errors
from sumfreefp.fourier import convolve
from sumfreefp.modp import (
    MAX_PRIME,
    build_context,
    custom_interval,
    divisors,
    eighths_interval,
    is_prime,
    primes_in_range,
    subgroup_of_index,
    thirds_interval,
)

PRIMES_500 = primes_in_range(5, 500)


def test_build_context_examples():
    assert build_context(13).g == 2
    assert build_context(7).g == 3
    with pytest.raises(errors.NotPrime):
        build_context(9)
    with pytest.raises(errors.PrimeTooSmall):
        build_context(3)
    with pytest.raises(errors.PrimeTooLarge):
        build_context(2**20 + 7)
    with pytest.raises(errors.NotPrime):
        build_context(2**20 - 1)


def test_primality_and_sieve_agree():
    sieved = set(primes_in_range(2, 2000))
    for n in range(2, 2000):
        assert is_prime(n) == (n in sieved)


def test_dlog_is_bijective_inverse_of_powers():
    for p in (5, 13, 101, 499):
        ctx = build_context(p)
        assert sorted(ctx.dlog[1:]) == list(range(p - 1))
        for x in range(1, p):
            assert pow(ctx.g, int(ctx.dlog[x]), p) == x


def test_generator_has_full_order():
    for p in (7, 13, 31, 461):
        ctx = build_context(p)
        seen = {pow(ctx.g, k, p) for k in range(p - 1)}
        assert len(seen) == p - 1


def test_subgroup_examples():
    ctx = build_context(13)
    sub = subgroup_of_index(ctx, 2)
    assert sorted(sub.members) == [1, 3, 4, 9, 10, 12]
    assert sub.contains_minus_one
    whole = subgroup_of_index(ctx, 1)
    assert sorted(whole.members) == list(range(1, 13))
    assert whole.n == 1
    sub7 = subgroup_of_index(build_context(7), 2)
    assert sorted(sub7.members) == [1, 2, 4]
    assert not sub7.contains_minus_one
    with pytest.raises(errors.IndexDoesNotDivide):
        subgroup_of_index(ctx, 5)


def test_cosets_partition_for_all_small_primes():
    for p in PRIMES_500:
        ctx = build_context(p)
        for n in divisors(p - 1):
            sub = subgroup_of_index(ctx, n)
            counts = np.bincount(sub.coset_of[1:], minlength=n)
            assert counts.shape[0] == n
            assert np.all(counts == (p - 1) // n)
            assert len(sub.coset_reps) == n and sub.coset_reps[0] == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([13, 31, 61, 101]), st.data())
def test_coset_label_multiplicativity(p, data):
    ctx = build_context(p)
    n = data.draw(st.sampled_from(divisors(p - 1)))
    sub = subgroup_of_index(ctx, n)
    x = data.draw(st.integers(1, p - 1))
    y = data.draw(st.integers(1, p - 1))
    assert sub.coset_index(x * y % p) == (sub.coset_index(x) + sub.coset_index(y)) % n


def test_neg_coset_involution():
    for p in (13, 29, 31):
        ctx = build_context(p)
        for n in divisors(p - 1):
            sub = subgroup_of_index(ctx, n)
            for j in range(n):
                assert sub.neg_coset[sub.neg_coset[j]] == j
                rep = sub.coset_reps[j]
                assert sub.coset_index(p - rep) == sub.neg_coset[j]
            identity = all(sub.neg_coset[j] == j for j in range(n))
            assert identity == sub.contains_minus_one


def test_legendre_examples():
    ctx = build_context(13)
    assert ctx.legendre(5) == -1
    assert ctx.legendre(0) == 0
    assert ctx.legendre(4) == 1
    # Euler criterion agreement across a few primes
    for p in (7, 29, 101):
        c = build_context(p)
        for x in range(p):
            euler = pow(x, (p - 1) // 2, p)
            expect = 0 if x == 0 else (1 if euler == 1 else -1)
            assert c.legendre(x) == expect


def test_interval_shapes():
    iv = thirds_interval(13)
    assert list(iv.members) == [5, 6, 7, 8]
    assert iv.size == (2 * 13) // 3 - 13 // 3
    j7 = eighths_interval(7)
    assert list(j7.members) == [1, 2]
    for p in PRIMES_500:
        iv = thirds_interval(p)
        assert iv.size == (2 * p) // 3 - p // 3
        jv = eighths_interval(p)
        assert jv.size == (3 * p) // 8 - p // 8


def test_thirds_is_symmetric():
    for p in PRIMES_500:
        iv = thirds_interval(p)
        members = set(iv.members)
        assert {(p - x) % p for x in members} == members


def test_eighths_not_symmetric():
    for p in (11, 13, 101):
        jv = eighths_interval(p)
        members = set(jv.members)
        assert {(p - x) % p for x in members} != members


def test_thirds_sum_free_exhaustive():
    for p in PRIMES_500:
        iv = thirds_interval(p)
        xs = np.arange(iv.lo, iv.hi)
        sums = (xs[:, None] + xs[None, :]).ravel() % p
        assert not np.any((sums >= iv.lo) & (sums < iv.hi))


def test_eighths_triple_free_exhaustive():
    # count solutions of x1+x2+x3 = y with all in J via exact convolution
    for p in PRIMES_500:
        jv = eighths_interval(p)
        ind = jv.indicator()
        triple = convolve(convolve(ind, ind), ind)
        assert int(np.dot(triple, ind)) == 0


def test_custom_interval_bounds():
    iv = custom_interval(13, 1, 5)
    assert list(iv.members) == [1, 2, 3, 4]
    with pytest.raises(errors.OutOfRange):
        custom_interval(13, 5, 5)
    with pytest.raises(errors.OutOfRange):
        custom_interval(13, -1, 5)


def test_cap_and_inverse():
    ctx = build_context(101)
    for x in range(1, 101):
        assert ctx.inverse(x) * x % 101 == 1
    with pytest.raises(errors.OutOfRange):
        ctx.inverse(0)
    assert MAX_PRIME == 2**20
